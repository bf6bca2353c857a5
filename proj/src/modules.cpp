#include "mcmlab/modules.hpp"

#include <algorithm>
#include <random>

#include "mcmlab/errors.hpp"
#include "mcmlab/polyfit.hpp"

namespace mcmlab {

namespace {

template <class K>
PolyMatrix<K> zeros(std::size_t r, std::size_t c) {
  return PolyMatrix<K>(r, c);
}

template <class K>
std::size_t constant_rank(const PolyMatrix<K>& P) {
  std::vector<SparseVec<K>> cols;
  for (std::size_t j = 0; j < P.cols(); ++j) {
    SparseVec<K> v;
    for (std::size_t i = 0; i < P.rows(); ++i) {
      K c = P(i, j).constant_term();
      if (!c.is_zero()) v.emplace_back(static_cast<std::uint32_t>(i), c);
    }
    cols.push_back(v);
  }
  return rank_of(cols, P.rows());
}

std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != skip) out.push_back(k);
  }
  return out;
}

template <class K>
std::optional<std::pair<std::size_t, std::size_t>> find_constant(const PolyMatrix<K>& P) {
  for (std::size_t j = 0; j < P.cols(); ++j) {
    for (std::size_t i = 0; i < P.rows(); ++i) {
      const auto& p = P(i, j);
      if (!p.is_zero() && p.is_constant()) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

// Removes generator i using relation j, whose i-th entry is the constant u:
// e_i = -u^{-1} sum_{k != i} P(k,j) e_k.
template <class K>
struct Elimination {
  PolyMatrix<K> P;
  PolyMatrix<K> to;    // (rows-1) x rows
  PolyMatrix<K> from;  // rows x (rows-1)
};

template <class K>
Elimination<K> eliminate(const RingSpec<K>& ring, const PolyMatrix<K>& P, std::size_t i, std::size_t j) {
  const std::size_t r = P.rows();
  const K uinv = P(i, j).constant_term().inverse();
  auto keep_rows = all_but(r, i);
  auto keep_cols = all_but(P.cols(), j);
  Elimination<K> e;
  e.P = PolyMatrix<K>(r - 1, keep_cols.size());
  for (std::size_t a = 0; a < keep_rows.size(); ++a) {
    for (std::size_t b = 0; b < keep_cols.size(); ++b) {
      const std::size_t k = keep_rows[a], c = keep_cols[b];
      auto v = P(k, c);
      if (!P(i, c).is_zero() && !P(k, j).is_zero()) v -= P(k, j) * P(i, c) * uinv;
      e.P(a, b) = v;
    }
  }
  e.to = PolyMatrix<K>(r - 1, r);
  e.from = PolyMatrix<K>(r, r - 1);
  const auto one = ring.constant(1);
  for (std::size_t a = 0; a < keep_rows.size(); ++a) {
    e.to(a, keep_rows[a]) = one;
    e.from(keep_rows[a], a) = one;
    if (!P(keep_rows[a], j).is_zero()) e.to(a, i) = P(keep_rows[a], j) * (-uinv);
  }
  return e;
}

template <class K>
PolyMatrix<K> drop_zero_cols(const PolyMatrix<K>& P) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < P.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < P.rows() && zero; ++i) zero = P(i, j).is_zero();
    if (!zero) keep.push_back(j);
  }
  return P.select_cols(keep);
}

template <class K>
Polynomial<K> normal_form(const GradedRing<K>& R, const Polynomial<K>& p) {
  if (p.is_zero()) return p;
  const long D = R.degree(p);
  return R.from_coords(R.coords(p, D), D);
}

template <class K>
GradedMatrix<K> mf_grading(const Module<K>& M, long deg_f, std::vector<long>& psi_cols) {
  const auto& mf = M.mf();
  const std::size_t n = mf.phi.rows();
  DegreeGraph g;
  const std::size_t rows = g.add_nodes(n), cols = g.add_nodes(n);
  const auto& w = M.ring().weights;
  add_matrix_constraints(g, mf.phi, rows, cols, w);
  // psi maps F_0(-deg f) to F_1: entry (a, b) has degree deg(row b) + deg f - deg(col a).
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto& p = mf.psi(a, b);
      if (p.is_zero()) continue;
      if (!p.is_homogeneous(w)) throw NotGraded("factorization entry is not homogeneous");
      g.relate(rows + b, cols + a, p.weighted_degree(w) - deg_f);
    }
  }
  auto deg = g.solve();
  if (!deg) throw NotGraded("factorization admits no consistent grading");
  GradedMatrix<K> out;
  out.mat = mf.phi;
  out.rows.assign(deg->begin(), deg->begin() + n);
  out.cols.assign(deg->begin() + n, deg->end());
  psi_cols.clear();
  for (long r : out.rows) psi_cols.push_back(r + deg_f);
  return out;
}

}  // namespace

template <class K>
CheckResult mf_validate(const RingSpec<K>& ring, const MatrixFactorization<K>& mf) {
  if (!ring.is_hypersurface()) return {false, "matrix factorizations need a hypersurface ring"};
  const std::size_t n = mf.phi.rows();
  if (mf.phi.cols() != n || mf.psi.rows() != n || mf.psi.cols() != n) {
    return {false, "phi and psi must be square of the same size"};
  }
  const auto& f = ring.relations.front();
  auto check = [&](const PolyMatrix<K>& prod, const char* name) -> CheckResult {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto expected = i == j ? f : Polynomial<K>();
        if (!(prod(i, j) == expected)) {
          return {false, std::string(name) + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                             ") is " + ring.print(prod(i, j)) + ", expected " + ring.print(expected)};
        }
      }
    }
    return {};
  };
  auto r = check(mf.phi * mf.psi, "phi*psi");
  if (!r.ok) return r;
  return check(mf.psi * mf.phi, "psi*phi");
}

template <class K>
Module<K> Module<K>::from_presentation(RingPtr<K> ring, PolyMatrix<K> P, std::string label) {
  Module M;
  M.ring_ = std::move(ring);
  M.P_ = std::move(P);
  M.label_ = std::move(label);
  return M;
}

template <class K>
Module<K> Module<K>::from_mf(RingPtr<K> ring, MatrixFactorization<K> mf, std::size_t free_rank,
                             std::string label) {
  auto check = mf_validate(*ring, mf);
  if (!check.ok) throw InputError("invalid matrix factorization: " + check.message);
  Module M;
  M.ring_ = std::move(ring);
  M.P_ = PolyMatrix<K>::vstack(mf.phi, zeros<K>(free_rank, mf.phi.cols()));
  M.mf_ = std::move(mf);
  M.free_rank_ = free_rank;
  M.label_ = std::move(label);
  return M;
}

template <class K>
Module<K> Module<K>::free(RingPtr<K> ring, std::size_t rank, std::string label) {
  if (ring->is_hypersurface()) return from_mf(ring, {{}, {}}, rank, std::move(label));
  return from_presentation(ring, zeros<K>(rank, 0), std::move(label));
}

template <class K>
Module<K> Module<K>::with_label(std::string label) const {
  Module M = *this;
  M.label_ = std::move(label);
  return M;
}

template <class K>
Module<K> Module<K>::as_presentation() const {
  return from_presentation(ring_, P_, label_);
}

template <class K>
std::size_t mu(const Module<K>& M) {
  return M.num_generators() - constant_rank(M.presentation());
}

template <class K>
GradedMatrix<K> graded_presentation(const Module<K>& M) {
  if (!M.ring().graded()) throw NotGraded("the ring is not graded");
  if (M.is_mf() && M.mf().phi.rows() > 0) {
    std::vector<long> psi_cols;
    auto g = mf_grading(M, M.ring().relations.front().weighted_degree(M.ring().weights), psi_cols);
    g.mat = M.presentation();
    g.rows.resize(M.num_generators(), 0);
    return g;
  }
  return grade(M.presentation(), M.ring().weights);
}

template <class K>
MinimalForm<K> minimal_form(const GradedRing<K>& R, const GradedMatrix<K>& P0) {
  const auto& ring = R.ring();
  MinimalForm<K> out;
  out.P = P0;
  out.to_min = PolyMatrix<K>::identity(ring, P0.mat.rows());
  out.from_min = out.to_min;
  while (auto pos = find_constant(out.P.mat)) {
    auto [i, j] = *pos;
    auto e = eliminate(ring, out.P.mat, i, j);
    out.P.mat = e.P;
    out.P.rows.erase(out.P.rows.begin() + static_cast<long>(i));
    out.P.cols.erase(out.P.cols.begin() + static_cast<long>(j));
    out.to_min = e.to * out.to_min;
    out.from_min = out.from_min * e.from;
  }
  for (std::size_t i = 0; i < out.P.mat.rows(); ++i) {
    for (std::size_t j = 0; j < out.P.mat.cols(); ++j) out.P.mat(i, j) = normal_form(R, out.P.mat(i, j));
  }
  auto keep = minimal_columns(R, out.P);
  out.P.mat = out.P.mat.select_cols(keep);
  std::vector<long> cols;
  for (auto k : keep) cols.push_back(out.P.cols[k]);
  out.P.cols = cols;
  return out;
}

template <class K>
std::pair<MatrixFactorization<K>, std::size_t> reduce_mf(const MatrixFactorization<K>& mf0) {
  MatrixFactorization<K> mf = mf0;
  std::size_t free = 0;
  while (true) {
    if (auto pos = find_constant(mf.psi)) {
      auto [i, j] = *pos;
      const K cinv = mf.psi(i, j).constant_term().inverse();
      const std::size_t n = mf.psi.rows();
      PolyMatrix<K> psi(n - 1, n - 1);
      auto rows = all_but(n, i), cols = all_but(n, j);
      for (std::size_t a = 0; a < n - 1; ++a) {
        for (std::size_t b = 0; b < n - 1; ++b) {
          auto v = mf.psi(rows[a], cols[b]);
          if (!mf.psi(rows[a], j).is_zero() && !mf.psi(i, cols[b]).is_zero()) {
            v -= mf.psi(rows[a], j) * mf.psi(i, cols[b]) * cinv;
          }
          psi(a, b) = v;
        }
      }
      mf.phi = mf.phi.select(all_but(n, j), all_but(n, i));
      mf.psi = psi;
      ++free;
      continue;
    }
    if (auto pos = find_constant(mf.phi)) {
      auto [i, j] = *pos;
      std::swap(mf.phi, mf.psi);
      const K cinv = mf.psi(i, j).constant_term().inverse();
      const std::size_t n = mf.psi.rows();
      PolyMatrix<K> psi(n - 1, n - 1);
      auto rows = all_but(n, i), cols = all_but(n, j);
      for (std::size_t a = 0; a < n - 1; ++a) {
        for (std::size_t b = 0; b < n - 1; ++b) {
          auto v = mf.psi(rows[a], cols[b]);
          if (!mf.psi(rows[a], j).is_zero() && !mf.psi(i, cols[b]).is_zero()) {
            v -= mf.psi(rows[a], j) * mf.psi(i, cols[b]) * cinv;
          }
          psi(a, b) = v;
        }
      }
      mf.phi = mf.phi.select(all_but(n, j), all_but(n, i));
      mf.psi = psi;
      std::swap(mf.phi, mf.psi);
      continue;
    }
    break;
  }
  return {mf, free};
}

template <class K>
Module<K> minimalize(const Module<K>& M) {
  if (M.is_mf()) {
    auto [mf, free] = reduce_mf(M.mf());
    return Module<K>::from_mf(M.ring_ptr(), mf, M.free_rank() + free, M.label());
  }
  if (M.ring().graded()) {
    GradedRing<K> R(M.ring_ptr());
    auto form = minimal_form(R, graded_presentation(M));
    return Module<K>::from_presentation(M.ring_ptr(), form.P.mat, M.label());
  }
  PolyMatrix<K> P = M.presentation();
  while (auto pos = find_constant(P)) P = eliminate(M.ring(), P, pos->first, pos->second).P;
  return Module<K>::from_presentation(M.ring_ptr(), drop_zero_cols(P), M.label());
}

template <class K>
std::vector<GradedMatrix<K>> resolution(const Module<K>& M0, std::size_t length, const KernelOptions& opt,
                                        bool minimal) {
  std::vector<GradedMatrix<K>> d;
  if (length == 0) return d;
  const Module<K> M = minimal ? minimalize(M0) : M0;
  if (M.is_mf()) {
    const auto& mf = M.mf();
    const std::size_t n = mf.phi.rows();
    GradedMatrix<K> phi{mf.phi, {}, {}}, psi{mf.psi, {}, {}};
    std::vector<long> lead_rows;
    long deg_f = 0;
    // a factorization that admits no grading (e.g. a sum of classes of
    // different degrees) still resolves, only without degrees
    if (M.ring().graded() && n > 0) {
      try {
        deg_f = M.ring().relations.front().weighted_degree(M.ring().weights);
        phi = mf_grading(M, deg_f, psi.cols);
        psi.rows = phi.cols;
        lead_rows = phi.rows;
        lead_rows.resize(M.num_generators(), 0);
      } catch (const NotGraded&) {
        phi = {mf.phi, {}, {}};
        psi = {mf.psi, {}, {}};
        lead_rows.clear();
        deg_f = 0;
      }
    }
    GradedMatrix<K> d1{M.presentation(), lead_rows, phi.cols};
    d.push_back(d1);
    for (std::size_t k = 1; k < length; ++k) {
      // d_{k+1}: psi shifted by (m-1) deg f when k+1 = 2m, phi by m deg f when k+1 = 2m+1
      const bool even = k % 2 == 1;
      GradedMatrix<K> next = even ? psi : phi;
      const long shift = deg_f * (even ? static_cast<long>((k + 1) / 2) - 1 : static_cast<long>(k / 2));
      for (auto& v : next.rows) v += shift;
      for (auto& v : next.cols) v += shift;
      d.push_back(next);
    }
    return d;
  }
  GradedRing<K> R(M.ring_ptr());
  d.push_back(graded_presentation(M));
  for (std::size_t k = 1; k < length; ++k) d.push_back(graded_kernel(R, d.back(), opt));
  return d;
}

template <class K>
Module<K> syzygy(const Module<K>& M0, std::size_t i, const KernelOptions& opt) {
  const Module<K> M = minimalize(M0);
  if (i == 0) return M;
  const std::string label = M.label().empty() ? "" : "syz" + std::to_string(i) + "(" + M.label() + ")";
  if (M.is_mf()) {
    const auto& mf = M.mf();
    MatrixFactorization<K> out = i % 2 == 1 ? MatrixFactorization<K>{mf.psi, mf.phi} : mf;
    return Module<K>::from_mf(M.ring_ptr(), out, 0, label);
  }
  auto d = resolution(M, i + 1, opt, true);
  return Module<K>::from_presentation(M.ring_ptr(), d[i].mat, label);
}

template <class K>
std::vector<std::size_t> betti_numbers(const Module<K>& M0, std::size_t upto, const KernelOptions& opt) {
  const Module<K> M = minimalize(M0);
  std::vector<std::size_t> b{M.num_generators()};
  if (M.is_mf()) {
    for (std::size_t k = 1; k <= upto; ++k) b.push_back(M.mf().phi.rows());
    return b;
  }
  auto d = resolution(M, upto, opt, true);
  for (const auto& m : d) b.push_back(m.mat.cols());
  return b;
}

ComplexityReport complexity_estimate(const std::vector<std::size_t>& betti) {
  ComplexityReport rep;
  if (betti.size() < 6) {
    rep.note = "at least six Betti numbers are needed";
    return rep;
  }
  std::vector<std::int64_t> v(betti.begin(), betti.end());
  try {
    auto fit = fit_table(v, 1);
    rep.fit_degree = fit.degree;
    rep.stabilization_index = fit.stabilization_index;
    rep.complexity = fit.degree + 1;
    rep.note = "Betti numbers agree with " + fit.to_string() + " from index " +
               std::to_string(fit.stabilization_index);
  } catch (const WindowTooShort&) {
    rep.note = "no polynomial tail among the computed Betti numbers";
  }
  return rep;
}

template <class K>
bool is_free(const Module<K>& M) {
  auto m = minimalize(M);
  if (m.is_mf()) return m.mf().phi.rows() == 0;
  if (!M.ring().graded()) throw NotGraded("freeness of a presentation needs a graded ring");
  return m.presentation().cols() == 0;
}

template <class K>
std::pair<Module<K>, std::size_t> free_summand_split(const Module<K>& M0) {
  const Module<K> M = minimalize(M0);
  if (M.is_mf()) {
    return {Module<K>::from_mf(M.ring_ptr(), M.mf(), 0, M.label()), M.free_rank()};
  }
  if (!M.ring().graded()) throw NotGraded("splitting a presentation needs a graded ring");
  GradedRing<K> R(M.ring_ptr());
  auto P = graded_presentation(M);
  // Maps M -> A are the rows w with w * P = 0, i.e. ker(P^T) with dual degrees.
  GradedMatrix<K> Pt{P.mat.transpose(), {}, {}};
  for (long c : P.cols) Pt.rows.push_back(-c);
  for (long r : P.rows) Pt.cols.push_back(-r);
  const long lo = Pt.cols.empty() ? 0 : *std::min_element(Pt.cols.begin(), Pt.cols.end());
  for (auto& v : Pt.rows) v -= lo;
  for (auto& v : Pt.cols) v -= lo;
  auto W = graded_kernel(R, Pt);
  Echelon<K> ech(M.num_generators());
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < W.mat.cols(); ++c) {
    SparseVec<K> v;
    for (std::size_t i = 0; i < W.mat.rows(); ++i) {
      K k = W.mat(i, c).constant_term();
      if (!k.is_zero()) v.emplace_back(static_cast<std::uint32_t>(i), k);
    }
    if (!v.empty() && ech.insert(v)) pivots.push_back(v.front().first);
  }
  // The pivot generators span a complement of the kernel of those maps.
  const std::size_t r = pivots.size();
  if (r == 0) return {M, 0};
  std::sort(pivots.begin(), pivots.end());
  PolyMatrix<K> E(M.num_generators(), r);
  for (std::size_t k = 0; k < r; ++k) E(pivots[k], k) = M.ring().constant(1);
  auto L = minimalize(Module<K>::from_presentation(M.ring_ptr(), PolyMatrix<K>::hstack(P.mat, E), M.label()));
  return {L, r};
}

template <class K>
Module<K> direct_sum(const Module<K>& M, const Module<K>& N) {
  std::string label = M.label().empty() || N.label().empty() ? "" : M.label() + " + " + N.label();
  if (M.is_mf() && N.is_mf()) {
    MatrixFactorization<K> mf{PolyMatrix<K>::block_diag(M.mf().phi, N.mf().phi),
                              PolyMatrix<K>::block_diag(M.mf().psi, N.mf().psi)};
    if (M.free_rank() == 0 || N.mf().phi.rows() == 0) {
      return Module<K>::from_mf(M.ring_ptr(), mf, M.free_rank() + N.free_rank(), label);
    }
  }
  return Module<K>::from_presentation(M.ring_ptr(),
                                      PolyMatrix<K>::block_diag(M.presentation(), N.presentation()), label);
}

template <class K>
Module<K> to_mf(const Module<K>& M) {
  if (M.is_mf()) return minimalize(M);
  const auto& ring = M.ring();
  if (!ring.is_hypersurface()) throw InputError("matrix factorizations need a hypersurface ring");
  GradedRing<K> R(M.ring_ptr());
  auto form = minimal_form(R, graded_presentation(M));
  const std::size_t mu = form.P.mat.rows();
  const auto& f = ring.relations.front();
  const long deg_f = R.degree(f);
  auto Q = ambient_ring(ring);
  GradedRing<K> RQ(Q);
  GradedMatrix<K> C;
  C.mat = PolyMatrix<K>::hstack(form.P.mat, PolyMatrix<K>::diagonal(mu, f));
  C.rows = form.P.rows;
  C.cols = form.P.cols;
  for (long r : form.P.rows) C.cols.push_back(r + deg_f);
  auto keep = minimal_columns(RQ, C);
  if (keep.size() != mu) {
    throw InputError("module is not maximal Cohen-Macaulay: over the ambient ring it needs " +
                     std::to_string(keep.size()) + " relations on " + std::to_string(mu) + " generators");
  }
  GradedMatrix<K> phi{C.mat.select_cols(keep), C.rows, {}};
  for (auto k : keep) phi.cols.push_back(C.cols[k]);
  GradedSolver<K> solver(RQ, phi);
  PolyMatrix<K> psi(mu, mu);
  for (std::size_t j = 0; j < mu; ++j) {
    std::vector<Polynomial<K>> b(mu);
    b[j] = f;
    auto x = solver.solve(b, form.P.rows[j] + deg_f);
    if (!x) throw InvariantViolation("f*e_j is not in the column span of phi over the ambient ring");
    psi.set_col(j, *x);
  }
  return minimalize(Module<K>::from_mf(M.ring_ptr(), {phi.mat, psi}, 0, M.label()));
}

template <class K>
CheckResult mcm_probe(const Module<K>& M, unsigned seed, long degrees) {
  const auto& ring = M.ring();
  if (ring.dim() != 1) return {false, "the probe is implemented for rings of dimension one"};
  GradedRing<K> R(M.ring_ptr());
  long e = 1;
  while (R.dim(e) == 0) ++e;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::int64_t> pick(1, 1000);
  SparseVec<K> lc;
  for (std::uint32_t b = 0; b < R.dim(e); ++b) lc.emplace_back(b, ring.scalar(pick(rng)));
  const auto ell = R.from_coords(lc, e);
  auto P = graded_presentation(M);
  const long lo = P.rows.empty() ? 0 : *std::min_element(P.rows.begin(), P.rows.end());
  for (long D = lo; D < lo + degrees; ++D) {
    auto here = component_map(R, P, D);
    auto there = component_map(R, P, D + e);
    Echelon<K> image(there.codomain_dim);
    for (const auto& c : there.columns) image.insert(c);
    // ell * (generator basis element) reduced modulo the relations of degree D + e
    auto layout = free_layout(R, P.rows, D);
    std::vector<SparseVec<K>> cols;
    for (std::size_t g = 0; g < P.rows.size(); ++g) {
      for (const auto& b : R.basis(D - P.rows[g])) {
        std::vector<Polynomial<K>> v(P.rows.size());
        v[g] = ell * b;
        cols.push_back(image.reduce(free_coords(R, v, P.rows, D + e)));
      }
    }
    const std::size_t kernel = layout.total - rank_of(cols, there.codomain_dim);
    if (kernel > here.rank()) {
      return {false, "a random element of degree " + std::to_string(e) + " kills an element of degree " +
                         std::to_string(D) + " (probabilistic evidence that depth is zero)"};
    }
  }
  return {true, "a random element of degree " + std::to_string(e) + " is injective in degrees " +
                    std::to_string(lo) + ".." + std::to_string(lo + degrees - 1) +
                    " (probabilistic evidence)"};
}

#define MCMLAB_INSTANTIATE(K)                                                                        \
  template CheckResult mf_validate<K>(const RingSpec<K>&, const MatrixFactorization<K>&);            \
  template class Module<K>;                                                                          \
  template std::size_t mu<K>(const Module<K>&);                                                      \
  template GradedMatrix<K> graded_presentation<K>(const Module<K>&);                                 \
  template MinimalForm<K> minimal_form<K>(const GradedRing<K>&, const GradedMatrix<K>&);             \
  template std::pair<MatrixFactorization<K>, std::size_t> reduce_mf<K>(const MatrixFactorization<K>&); \
  template Module<K> minimalize<K>(const Module<K>&);                                                \
  template std::vector<GradedMatrix<K>> resolution<K>(const Module<K>&, std::size_t,                 \
                                                      const KernelOptions&, bool);                   \
  template Module<K> syzygy<K>(const Module<K>&, std::size_t, const KernelOptions&);                 \
  template std::vector<std::size_t> betti_numbers<K>(const Module<K>&, std::size_t,                  \
                                                     const KernelOptions&);                          \
  template bool is_free<K>(const Module<K>&);                                                        \
  template std::pair<Module<K>, std::size_t> free_summand_split<K>(const Module<K>&);                \
  template Module<K> direct_sum<K>(const Module<K>&, const Module<K>&);                              \
  template Module<K> to_mf<K>(const Module<K>&);                                                     \
  template CheckResult mcm_probe<K>(const Module<K>&, unsigned, long);

MCMLAB_INSTANTIATE(Fp)
MCMLAB_INSTANTIATE(Rational)

}  // namespace mcmlab
