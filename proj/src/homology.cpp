#include "mcmlab/homology.hpp"

#include <algorithm>
#include <set>

#include "mcmlab/errors.hpp"
#include "mcmlab/parallel.hpp"

namespace mcmlab {

namespace {

template <class K>
PolyMatrix<K> zeros(std::size_t r, std::size_t c) {
  return PolyMatrix<K>(r, c);
}

template <class K>
PolyMatrix<K> inclusion_top(const RingSpec<K>& ring, std::size_t top, std::size_t bottom) {
  return PolyMatrix<K>::vstack(PolyMatrix<K>::identity(ring, top), zeros<K>(bottom, top));
}

template <class K>
PolyMatrix<K> projection_right(const RingSpec<K>& ring, std::size_t left, std::size_t right) {
  return PolyMatrix<K>::hstack(zeros<K>(right, left), PolyMatrix<K>::identity(ring, right));
}

template <class K>
TruncatedAlgebra<K> quotient_at(RingPtr<K> ring, const FiltrationSpec<K>& F, long n, std::size_t cap) {
  if (F.is_m_adic()) return build_truncation(ring, {}, static_cast<unsigned>(n), cap);
  return build_certified(ring, filtration_gens(*ring, F, n + 1), static_cast<unsigned>(n + 1), cap);
}

template <class K>
std::size_t tensor_rank(const PolyMatrix<K>& P, const TruncatedAlgebra<K>& T) {
  if (P.rows() == 0 || P.cols() == 0) return 0;
  return tensor_map(P, T).rank();
}

template <class K>
std::int64_t tor_from(const std::vector<GradedMatrix<K>>& d, std::size_t i, const TruncatedAlgebra<K>& T) {
  const auto dimT = static_cast<std::int64_t>(T.dim());
  if (i == 0) {
    const auto& d1 = d[0].mat;
    return static_cast<std::int64_t>(d1.rows()) * dimT - static_cast<std::int64_t>(tensor_rank(d1, T));
  }
  const auto& di = d[i - 1].mat;
  const auto& next = d[i].mat;
  const auto nullity =
      static_cast<std::int64_t>(di.cols()) * dimT - static_cast<std::int64_t>(tensor_rank(di, T));
  return nullity - static_cast<std::int64_t>(tensor_rank(next, T));
}

std::int64_t to_int64(const BigRational& q, const std::string& what) {
  if (denominator(q) != 1) throw InvariantViolation(what + " is not an integer");
  return numerator(q).template convert_to<std::int64_t>();
}

/// Echelon of the columns of P (x) T.
template <class K>
Echelon<K> image_of(const PolyMatrix<K>& P, const TruncatedAlgebra<K>& T) {
  Echelon<K> e(P.rows() * T.dim());
  if (P.cols() == 0 || P.rows() == 0) return e;
  for (const auto& c : tensor_map(P, T).columns) e.insert(c);
  return e;
}

/// Columns of A lie in the image of P after tensoring with T.
template <class K>
bool columns_in_image(const PolyMatrix<K>& A, const PolyMatrix<K>& P, const TruncatedAlgebra<K>& T) {
  if (A.rows() == 0) return true;
  auto img = image_of(P, T);
  for (std::size_t j = 0; j < A.cols(); ++j) {
    if (!img.reduce(tensor_coords(A.col(j), T)).empty()) return false;
  }
  return true;
}

template <class K>
std::int64_t quotient_length(const PolyMatrix<K>& P, const TruncatedAlgebra<K>& T) {
  return static_cast<std::int64_t>(P.rows() * T.dim()) - static_cast<std::int64_t>(tensor_rank(P, T));
}

template <class K>
Polynomial<K> derivative(const RingSpec<K>& ring, const Polynomial<K>& p, std::size_t v) {
  std::vector<typename Polynomial<K>::Term> terms;
  for (const auto& [m, c] : p.terms()) {
    if (m[v] == 0) continue;
    Monomial q = m;
    q.set(v, m[v] - 1);
    terms.emplace_back(q, c * ring.scalar(m[v]));
  }
  return Polynomial<K>::from_terms(std::move(terms));
}

/// Least s with m^s inside (f, df/dx_i) in the ambient ring, if m-primary.
template <class K>
std::optional<long> jacobian_power(const RingPtr<K>& ring) {
  const auto& f = ring->relations.front();
  std::vector<Polynomial<K>> gens{f};
  for (std::size_t v = 0; v < ring->nvars(); ++v) gens.push_back(derivative(*ring, f, v));
  try {
    auto T = build_certified(ambient_ring(*ring), gens, 2, 20000);
    if (auto s = T.certified_power()) return static_cast<long>(*s);
  } catch (const CapExceeded&) {
  }
  return std::nullopt;
}

template <class K>
void require_same_ring(const Module<K>& a, const Module<K>& b) {
  if (a.ring_ptr() != b.ring_ptr() && !(a.ring().relations == b.ring().relations && a.ring().vars == b.ring().vars)) {
    throw InputError("modules live over different rings");
  }
}

template <class K>
std::vector<Polynomial<K>> unit_vector(const RingSpec<K>& ring, std::size_t n, std::size_t k) {
  std::vector<Polynomial<K>> v(n);
  v[k] = ring.constant(1);
  return v;
}

template <class K>
std::vector<Polynomial<K>> times(const PolyMatrix<K>& A, const std::vector<Polynomial<K>>& v) {
  std::vector<Polynomial<K>> out(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (!A(i, j).is_zero() && !v[j].is_zero()) out[i] += A(i, j) * v[j];
    }
  }
  return out;
}

template <class K>
std::vector<Polynomial<K>> head(const std::vector<Polynomial<K>>& v, std::size_t n) {
  return std::vector<Polynomial<K>>(v.begin(), v.begin() + static_cast<long>(n));
}

std::vector<long> slice_of(const std::vector<long>& v, std::size_t from, std::size_t n) {
  return std::vector<long>(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(from + n));
}

std::vector<long> concat(std::vector<long> a, const std::vector<long>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Node layout of a sequence in a degree graph.
struct SequenceNodes {
  std::size_t Nr, Nc, Er, Ec, Mr, Mc;
};

template <class K>
SequenceNodes add_sequence(DegreeGraph& g, const ShortExactSequence<K>& s) {
  const auto& w = s.E.ring().weights;
  const auto& PN = s.N.presentation();
  const auto& PE = s.E.presentation();
  const auto& PM = s.M.presentation();
  SequenceNodes n{};
  n.Nr = g.add_nodes(PN.rows());
  n.Nc = g.add_nodes(PN.cols());
  n.Er = g.add_nodes(PE.rows());
  n.Ec = g.add_nodes(PE.cols());
  n.Mr = g.add_nodes(PM.rows());
  n.Mc = g.add_nodes(PM.cols());
  add_matrix_constraints(g, PN, n.Nr, n.Nc, w);
  add_matrix_constraints(g, PE, n.Er, n.Ec, w);
  add_matrix_constraints(g, PM, n.Mr, n.Mc, w);
  add_matrix_constraints(g, s.inject, n.Er, n.Nr, w);
  add_matrix_constraints(g, s.project, n.Mr, n.Er, w);
  return n;
}

template <class K>
void check_shapes(const ShortExactSequence<K>& s) {
  if (s.inject.rows() != s.E.num_generators() || s.inject.cols() != s.N.num_generators()) {
    throw InputError("inject must have shape E.rows x N.rows");
  }
  if (s.project.rows() != s.M.num_generators() || s.project.cols() != s.E.num_generators()) {
    throw InputError("project must have shape M.rows x E.rows");
  }
}

template <class K>
void check_constructed(const ShortExactSequence<K>& s, const std::string& what) {
  auto rep = verify_exactness(s, 4, false);
  if (!rep.ok) throw InvariantViolation(what + " is not exact: " + rep.failures.front());
}

}  // namespace

std::string to_string(EtorMethod m) {
  switch (m) {
    case EtorMethod::Limit:
      return "limit";
    case EtorMethod::Formula:
      return "formula";
    case EtorMethod::Both:
      return "both";
  }
  return "both";
}

EtorMethod parse_etor_method(const std::string& s) {
  if (s == "limit") return EtorMethod::Limit;
  if (s == "formula") return EtorMethod::Formula;
  if (s == "both") return EtorMethod::Both;
  throw InputError("unknown method '" + s + "' (expected limit, formula or both)");
}

template <class K>
std::int64_t tor_length(std::size_t i, const Module<K>& M, const FiltrationSpec<K>& F, long n, std::size_t cap) {
  if (n < 0) throw InputError("n must be nonnegative");
  auto d = resolution(M, i + 1);
  return tor_from(d, i, quotient_at(M.ring_ptr(), F, n, cap));
}

template <class K>
TorTable tor_table(std::size_t i, const std::vector<GradedMatrix<K>>& d, RingPtr<K> ring,
                   const FiltrationSpec<K>& F, long lo, long hi, std::size_t cap) {
  if (lo < 0 || hi < lo) throw InputError("window must satisfy 0 <= lo <= hi");
  if (d.size() < i + 1) throw InputError("resolution too short for Tor_" + std::to_string(i));
  TorTable t;
  t.i = i;
  t.window_lo = lo;
  t.window_hi = hi;
  t.values.assign(hi + 1, 0);
  for_each_quotient<K>(ring, F, hi, cap, [&](long n, const TruncatedAlgebra<K>& T) { t.values[n] = tor_from(d, i, T); });
  return t;
}

template <class K>
TorTable tor_table(std::size_t i, const Module<K>& M, const FiltrationSpec<K>& F, long lo, long hi, std::size_t cap) {
  return tor_table(i, resolution(M, i + 1), M.ring_ptr(), F, lo, hi, cap);
}

template <class K>
ETorReport etor(const Module<K>& M0, const FiltrationSpec<K>& F, EtorMethod method, std::size_t cap) {
  const Module<K> M = minimalize(M0);
  const int d = static_cast<int>(M.ring().dim());
  const auto res = resolution(M, 2);
  ETorReport rep;
  rep.method = method;
  rep.mu = mu(M);
  rep.mcm = M.is_mf() ? "matrix factorization" : "asserted";

  if (method != EtorMethod::Formula) {
    const long lo = d + 2;
    long hi = 2L * d + 8;
    PolyFit fit;
    while (true) {
      auto t = tor_table(1, res, M.ring_ptr(), F, 0, hi, cap);
      try {
        fit = d == 1 ? fit_constant(t.values, lo) : fit_table(t.values, lo);
        break;
      } catch (const WindowTooShort&) {
        if (hi >= 64) throw WindowTooShort("Tor_1 table has no polynomial tail up to n = 64");
        hi = std::min(64L, 2 * hi);
      }
    }
    if (fit.degree > d - 1) {
      throw InvariantViolation("Tor_1 lengths grow like n^" + std::to_string(fit.degree) +
                               ", faster than n^(d-1): the module is not maximal Cohen-Macaulay");
    }
    const BigRational lead = fit.degree == d - 1 ? fit.leading() : BigRational(0);
    rep.limit_value = to_int64(lead * BigRational(factorial(d - 1)), "limit of e^T");
    rep.stabilization_index = fit.stabilization_index;
    rep.window_lo = fit.window_lo;
    rep.window_hi = fit.window_hi;
  }
  if (method != EtorMethod::Limit) {
    const auto A = Module<K>::free(M.ring_ptr(), 1);
    const auto syz = Module<K>::from_presentation(M.ring_ptr(), res[1].mat);
    const auto hA = hilbert_coefficients(A, F, 64, cap);
    const auto hM = hilbert_coefficients(M, F, 64, cap);
    const auto hS = hilbert_coefficients(syz, F, 64, cap);
    auto e1 = [](const HilbertReport& h) { return h.e.size() > 1 ? h.e[1] : BigInt(0); };
    rep.e1_ring = e1(hA);
    rep.e1_module = e1(hM);
    rep.e1_syzygy = e1(hS);
    const BigInt v = rep.e1_ring * BigInt(M.num_generators()) - rep.e1_module - rep.e1_syzygy;
    rep.formula_value = v.template convert_to<std::int64_t>();
    if (method == EtorMethod::Formula) {
      rep.stabilization_index =
          std::max({hA.fit.stabilization_index, hM.fit.stabilization_index, hS.fit.stabilization_index});
      rep.window_lo = hM.fit.window_lo;
      rep.window_hi = std::max({hA.fit.window_hi, hM.fit.window_hi, hS.fit.window_hi});
    }
  }
  if (rep.limit_value && rep.formula_value && *rep.limit_value != *rep.formula_value) {
    throw InvariantViolation("e^T by the limit (" + std::to_string(*rep.limit_value) + ") and by the formula (" +
                             std::to_string(*rep.formula_value) + ") disagree");
  }
  rep.value = rep.limit_value ? *rep.limit_value : *rep.formula_value;
  if (rep.value < 0) throw InvariantViolation("negative e^T: the module is not maximal Cohen-Macaulay");
  return rep;
}

template <class K>
ExactnessReport verify_exactness(const ShortExactSequence<K>& s, long level, bool check_injective) {
  check_shapes(s);
  if (level < 0) throw InputError("level must be nonnegative");
  ExactnessReport rep;
  rep.level = level;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.failures.push_back(std::move(msg));
  };
  const auto& PN = s.N.presentation();
  const auto& PE = s.E.presentation();
  const auto& PM = s.M.presentation();
  const auto T = build_truncation(s.E.ring_ptr(), {}, static_cast<unsigned>(level));

  if (!columns_in_image(s.inject * PN, PE, T)) fail("inject does not respect the relations of N");
  if (!columns_in_image(s.project * PE, PM, T)) fail("project does not respect the relations of E");
  if (!columns_in_image(s.project * s.inject, PM, T)) fail("project o inject is not zero");
  const auto T0 = T.restrict(0);
  if (s.M.num_generators() > 0 &&
      tensor_rank(PolyMatrix<K>::hstack(s.project, PM), T0) != s.M.num_generators()) {
    fail("project is not onto");
  }
  if (!rep.ok) return rep;

  for (long l = 0; l <= level; ++l) {
    const auto Tl = T.restrict(static_cast<unsigned>(l));
    const std::size_t dimT = Tl.dim();
    auto target = image_of(PM, Tl);
    std::size_t r = 0;
    if (s.project.rows() > 0 && s.project.cols() > 0) {
      for (const auto& c : tensor_map(s.project, Tl).columns) r += target.insert(c) ? 1 : 0;
    }
    const std::size_t ker = s.E.num_generators() * dimT - r;
    auto image = image_of(PE, Tl);
    if (s.inject.rows() > 0 && s.inject.cols() > 0) {
      for (const auto& c : tensor_map(s.inject, Tl).columns) image.insert(c);
    }
    if (ker != image.rank()) {
      fail("kernel of project differs from the image of inject modulo m^" + std::to_string(l + 1));
      break;
    }
    if (quotient_length(PE, Tl) != quotient_length(PM, Tl) + quotient_length(PN, Tl)) rep.length_additive = false;
  }
  if (rep.ok && check_injective) {
    rep.injectivity_checked = true;
    const auto F = FiltrationSpec<K>::m_adic(s.E.ring());
    auto e0 = [&](const Module<K>& X) {
      if (X.num_generators() == 0) return BigInt(0);
      return hilbert_coefficients(X, F).e[0];
    };
    if (e0(s.E) != e0(s.N) + e0(s.M)) fail("e_0 is not additive, so inject has a kernel");
  }
  return rep;
}

template <class K>
ShortExactSequence<K> split_sequence(const Module<K>& N, const Module<K>& M) {
  require_same_ring(N, M);
  const auto& ring = N.ring();
  const std::size_t n = N.num_generators(), m = M.num_generators();
  return {N, direct_sum(N, M), M, inclusion_top(ring, n, m), projection_right(ring, n, m)};
}

template <class K>
SequenceETor etor_of_sequence(const ShortExactSequence<K>& s, const FiltrationSpec<K>& F, std::int64_t etor_N,
                              std::int64_t etor_M, EtorMethod method, std::size_t cap) {
  SequenceETor out;
  out.etor_N = etor_N;
  out.etor_M = etor_M;
  out.etor_E = etor(s.E, F, method, cap).value;
  out.value = etor_M + etor_N - out.etor_E;
  if (out.value < 0) {
    throw InvariantViolation("e^T(alpha) = " + std::to_string(out.value) +
                             " is negative: the sequence is not exact or a term is not maximal Cohen-Macaulay");
  }
  out.tsplit = out.value == 0;
  return out;
}

template <class K>
SequenceETor etor_of_sequence(const ShortExactSequence<K>& s, const FiltrationSpec<K>& F, EtorMethod method,
                              std::size_t cap) {
  return etor_of_sequence(s, F, etor(s.N, F, method, cap).value, etor(s.M, F, method, cap).value, method, cap);
}

template <class K>
bool is_tsplit(const ShortExactSequence<K>& s, const FiltrationSpec<K>& F) {
  return etor_of_sequence(s, F).tsplit;
}

template <class K>
bool map_well_defined(const PolyMatrix<K>& g, const Module<K>& N, const Module<K>& Nprime, long level) {
  if (g.rows() != Nprime.num_generators() || g.cols() != N.num_generators()) {
    throw InputError("map has shape " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) + ", expected " +
                     std::to_string(Nprime.num_generators()) + "x" + std::to_string(N.num_generators()));
  }
  const auto T = build_truncation(N.ring_ptr(), {}, static_cast<unsigned>(level));
  return columns_in_image(g * N.presentation(), Nprime.presentation(), T);
}

template <class K>
ShortExactSequence<K> minimalize_sequence(const ShortExactSequence<K>& s) {
  if (!s.E.ring().graded() || s.E.is_mf()) return s;
  GradedRing<K> R(s.E.ring_ptr());
  GradedMatrix<K> P;
  try {
    P = graded_presentation(s.E);
  } catch (const NotGraded&) {
    return s;
  }
  auto form = minimal_form(R, P);
  ShortExactSequence<K> out = s;
  out.E = Module<K>::from_presentation(s.E.ring_ptr(), form.P.mat, s.E.label());
  out.inject = form.to_min * s.inject;
  out.project = s.project * form.from_min;
  return out;
}

template <class K>
ShortExactSequence<K> pushout(const ShortExactSequence<K>& s, const PolyMatrix<K>& g, const Module<K>& Nprime) {
  check_shapes(s);
  require_same_ring(s.N, Nprime);
  if (!map_well_defined(g, s.N, Nprime)) throw InputError("map is not well defined modulo the relations");
  const auto& ring = s.E.ring();
  const auto& PNp = Nprime.presentation();
  const auto& PE = s.E.presentation();
  const std::size_t np = Nprime.num_generators(), e = s.E.num_generators();
  PolyMatrix<K> top = PolyMatrix<K>::hstack(PolyMatrix<K>::hstack(PNp, zeros<K>(np, PE.cols())), g);
  PolyMatrix<K> bottom = PolyMatrix<K>::hstack(PolyMatrix<K>::hstack(zeros<K>(e, PNp.cols()), PE), -s.inject);
  ShortExactSequence<K> out{Nprime,
                            Module<K>::from_presentation(s.E.ring_ptr(), PolyMatrix<K>::vstack(top, bottom)),
                            s.M,
                            inclusion_top(ring, np, e),
                            PolyMatrix<K>::hstack(zeros<K>(s.M.num_generators(), np), s.project)};
  out = minimalize_sequence(out);
  check_constructed(out, "pushout");
  return out;
}

template <class K>
ShortExactSequence<K> pullback(const ShortExactSequence<K>& s, const PolyMatrix<K>& h, const Module<K>& Mprime) {
  check_shapes(s);
  require_same_ring(s.M, Mprime);
  if (!map_well_defined(h, Mprime, s.M)) throw InputError("map is not well defined modulo the relations");
  const auto ring_ptr = s.E.ring_ptr();
  const auto& ring = *ring_ptr;
  if (!ring.graded()) throw NotGraded("pullbacks need a graded ring");
  const auto& w = ring.weights;
  const auto& PMp = Mprime.presentation();
  DegreeGraph g;
  const auto nodes = add_sequence(g, s);
  const std::size_t Mpr = g.add_nodes(PMp.rows()), Mpc = g.add_nodes(PMp.cols());
  add_matrix_constraints(g, PMp, Mpr, Mpc, w);
  add_matrix_constraints(g, h, nodes.Mr, Mpr, w);
  auto deg = g.solve();
  if (!deg) throw NotGraded("the sequence and the map admit no common grading");
  const std::size_t n = s.N.num_generators(), e = s.E.num_generators(), m = s.M.num_generators();
  const std::size_t mp = Mprime.num_generators();
  const auto& PE = s.E.presentation();
  const auto& PM = s.M.presentation();
  auto degs = [&](std::size_t base, std::size_t count) { return slice_of(*deg, base, count); };

  GradedRing<K> R(ring_ptr);
  GradedSolver<K> lift(R, GradedMatrix<K>{PolyMatrix<K>::hstack(s.project, PM), degs(nodes.Mr, m),
                                          concat(degs(nodes.Er, e), degs(nodes.Mc, PM.cols()))});
  PolyMatrix<K> U(e, mp);
  for (std::size_t i = 0; i < mp; ++i) {
    auto b = h.col(i);
    auto D = vector_degree(R, b, degs(nodes.Mr, m));
    if (!D) continue;
    auto x = lift.solve(b, *D);
    if (!x) throw InputError("project is not onto the image of the map");
    U.set_col(i, head(*x, e));
  }
  PolyMatrix<K> Q = PolyMatrix<K>::blocks(
      PolyMatrix<K>::hstack(s.inject, U), PolyMatrix<K>::hstack(PE, zeros<K>(e, PMp.cols())),
      PolyMatrix<K>::hstack(zeros<K>(mp, n), PolyMatrix<K>::identity(ring, mp)),
      PolyMatrix<K>::hstack(zeros<K>(mp, PE.cols()), PMp));
  GradedMatrix<K> GQ{Q, concat(degs(nodes.Er, e), degs(Mpr, mp)),
                     concat(concat(degs(nodes.Nr, n), degs(Mpr, mp)),
                               concat(degs(nodes.Ec, PE.cols()), degs(Mpc, PMp.cols())))};
  auto ker = graded_kernel(R, GQ);
  std::vector<std::size_t> top(n + mp);
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  PolyMatrix<K> P = ker.mat.select_rows(top);
  ShortExactSequence<K> out{s.N, Module<K>::from_presentation(ring_ptr, P), Mprime, inclusion_top(ring, n, mp),
                            projection_right(ring, n, mp)};
  out = minimalize_sequence(out);
  check_constructed(out, "pullback");
  return out;
}

template <class K>
ShortExactSequence<K> scalar_mult(const Polynomial<K>& r, const ShortExactSequence<K>& s) {
  const auto I = PolyMatrix<K>::identity(s.N.ring(), s.N.num_generators());
  return pushout(s, I.scaled(r), s.N);
}

template <class K>
ShortExactSequence<K> baer_sum(const ShortExactSequence<K>& s, const ShortExactSequence<K>& t) {
  check_shapes(s);
  check_shapes(t);
  if (!(s.N.presentation() == t.N.presentation()) || !(s.M.presentation() == t.M.presentation())) {
    throw InputError("Baer sum needs sequences with the same end terms");
  }
  const auto& ring = s.N.ring();
  const std::size_t n = s.N.num_generators(), m = s.M.num_generators();
  ShortExactSequence<K> sum{direct_sum(s.N, t.N), direct_sum(s.E, t.E), direct_sum(s.M, t.M),
                            PolyMatrix<K>::block_diag(s.inject, t.inject),
                            PolyMatrix<K>::block_diag(s.project, t.project)};
  const auto I_n = PolyMatrix<K>::identity(ring, n);
  const auto I_m = PolyMatrix<K>::identity(ring, m);
  auto pushed = pushout(sum, PolyMatrix<K>::hstack(I_n, I_n), s.N);
  return pullback(pushed, PolyMatrix<K>::vstack(I_m, I_m), s.M);
}

template <class K>
std::optional<long> annihilation_index(const ShortExactSequence<K>& s, const Polynomial<K>& a,
                                       const FiltrationSpec<K>& F, long cap) {
  if (a.is_local_unit()) throw InputError("the scalar must lie in the maximal ideal");
  const auto eN = etor(s.N, F, EtorMethod::Formula).value;
  const auto eM = etor(s.M, F, EtorMethod::Formula).value;
  for (long n = 0; n <= cap; ++n) {
    const auto t = n == 0 ? s : scalar_mult(a.pow(static_cast<unsigned>(n)), s);
    if (etor_of_sequence(t, F, eN, eM).tsplit) return n;
  }
  return std::nullopt;
}

template <class K>
Cosyzygy<K> cosyzygy(const Module<K>& M) {
  const auto ring_ptr = M.ring_ptr();
  const auto& ring = *ring_ptr;
  if (!ring.gorenstein) throw InputError("cosyzygies need a Gorenstein ring");
  const std::string label = M.label().empty() ? "" : "cosyz(" + M.label() + ")";
  if (M.is_mf()) {
    const auto& mf = M.mf();
    const std::size_t n = mf.phi.rows(), r = M.free_rank();
    auto omega = Module<K>::from_mf(ring_ptr, MatrixFactorization<K>{mf.psi, mf.phi}, 0, label);
    ShortExactSequence<K> seq{M, Module<K>::free(ring_ptr, n + r), omega,
                              PolyMatrix<K>::block_diag(mf.psi, PolyMatrix<K>::identity(ring, r)),
                              PolyMatrix<K>::hstack(PolyMatrix<K>::identity(ring, n), zeros<K>(n, r))};
    return {omega, seq};
  }
  GradedRing<K> R(ring_ptr);
  const auto P = graded_presentation(M);
  GradedMatrix<K> Pt{P.mat.transpose(), {}, {}};
  for (long c : P.cols) Pt.rows.push_back(-c);
  for (long r : P.rows) Pt.cols.push_back(-r);
  const auto K_ = graded_kernel(R, Pt);
  const auto Kt = K_.mat.transpose();
  const std::size_t t = Kt.rows();
  auto omega = Module<K>::from_presentation(ring_ptr, Kt, label);
  ShortExactSequence<K> seq{M, Module<K>::free(ring_ptr, t), omega, Kt, PolyMatrix<K>::identity(ring, t)};
  return {omega, seq};
}

template <class K>
ShortExactSequence<K> cone_extension(const Module<K>& M, const Module<K>& N, const PolyMatrix<K>& f) {
  if (!map_well_defined(f, M, N)) throw InputError("map is not well defined modulo the relations");
  return pushout(cosyzygy(M).sequence, f, N);
}

template <class K>
ShortExactSequence<K> extension_from_cocycle(const Module<K>& M, const Module<K>& N, const PolyMatrix<K>& H) {
  require_same_ring(M, N);
  const auto ring_ptr = M.ring_ptr();
  const auto& ring = *ring_ptr;
  const auto& PM = M.presentation();
  const auto& PN = N.presentation();
  if (H.rows() != PN.rows() || H.cols() != PM.cols()) throw InputError("cocycle has the wrong shape");
  const std::size_t n = N.num_generators(), m = M.num_generators();
  const auto inject = inclusion_top(ring, n, m);
  const auto project = projection_right(ring, n, m);
  if (M.is_mf() && N.is_mf() && M.free_rank() == 0 && N.free_rank() == 0) {
    const auto& f = ring.relations.front();
    const auto& a = N.mf();
    const auto& b = M.mf();
    PolyMatrix<K> G = a.psi * H * b.psi;
    for (std::size_t i = 0; i < G.rows(); ++i) {
      for (std::size_t j = 0; j < G.cols(); ++j) {
        Polynomial<K> q;
        if (!G(i, j).divide_exact(f, q)) throw InvariantViolation("cocycle does not lift to a factorization");
        G(i, j) = q;
      }
    }
    MatrixFactorization<K> mf{PolyMatrix<K>::blocks(a.phi, H, zeros<K>(m, n), -b.phi),
                              PolyMatrix<K>::blocks(a.psi, G, zeros<K>(m, n), -b.psi)};
    return {N, Module<K>::from_mf(ring_ptr, mf), M, inject, project};
  }
  auto P = PolyMatrix<K>::blocks(PN, H, zeros<K>(m, PN.cols()), -PM);
  return {N, Module<K>::from_presentation(ring_ptr, P), M, inject, project};
}

template <class K>
struct ExtGroup<K>::Piece {
  long D = 0;
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  Echelon<K> ech;
  std::vector<SparseVec<K>> reps;
};

template <class K>
ExtGroup<K>::ExtGroup(const Module<K>& M, const Module<K>& N, int headroom) : M_(M), N_(N) {
  require_same_ring(M, N);
  const auto ring_ptr = M.ring_ptr();
  const auto& ring = *ring_ptr;
  if (!M.is_mf() || !N.is_mf()) throw InputError("Ext groups need factorization-backed modules");
  if (!ring.is_hypersurface()) throw InputError("Ext groups need a hypersurface");
  if (!ring.graded()) throw NotGraded("Ext groups need a graded ring");
  R_ = std::make_unique<GradedRing<K>>(ring_ptr);
  auto d = resolution(M, 2);
  d1_ = d[0];
  d2_ = d[1];
  PN_ = graded_presentation(N);
  if (d1_.mat.cols() == 0 || PN_.mat.rows() == 0) return;

  const long deg_f = ring.relations.front().weighted_degree(ring.weights);
  const long maxw = *std::max_element(ring.weights.begin(), ring.weights.end());
  const long s = jacobian_power(ring_ptr).value_or(8);
  const auto [nlo, nhi] = std::minmax_element(PN_.rows.begin(), PN_.rows.end());
  const auto [clo, chi] = std::minmax_element(d1_.cols.begin(), d1_.cols.end());
  const long Dmin = *nlo - *chi;
  const long Dtop = *nhi - *clo + deg_f + s * maxw;
  int empty = 0;
  for (long D = Dmin;; ++D) {
    const auto& p = piece(D);
    window_.push_back(D);
    for (std::size_t t = 0; t < p.reps.size(); ++t) {
      degrees_.push_back(D);
      index_.emplace_back(D, t);
    }
    empty = p.reps.empty() ? empty + 1 : 0;
    if (D >= Dtop && empty >= headroom) break;
    if (D > Dtop + 16L * headroom) throw InvariantViolation("Ext classes keep appearing past the degree window");
  }
}

template <class K>
ExtGroup<K>::~ExtGroup() = default;

template <class K>
ExtGroup<K>::ExtGroup(ExtGroup&&) noexcept = default;

template <class K>
const typename ExtGroup<K>::Piece& ExtGroup<K>::piece(long D) const {
  auto it = pieces_.find(D);
  if (it != pieces_.end()) return *it->second;
  const auto& R = *R_;
  const auto& rN = PN_.rows;
  const std::size_t b1 = d1_.mat.cols(), b2 = d2_.mat.cols(), m = d1_.mat.rows();
  auto p = std::make_unique<Piece>();
  p->D = D;
  for (std::size_t j = 0; j < b1; ++j) {
    p->offset.push_back(p->total);
    p->total += free_layout(R, rN, d1_.cols[j] + D).total;
  }
  // cocycle condition: H d_2 lies in the image of P_N, one block per column of d_2
  std::vector<std::size_t> off2;
  std::size_t total2 = 0;
  std::vector<Echelon<K>> rel;
  for (std::size_t k = 0; k < b2; ++k) {
    const long deg = d2_.cols[k] + D;
    off2.push_back(total2);
    const auto dim = free_layout(R, rN, deg).total;
    total2 += dim;
    Echelon<K> e(dim);
    for (const auto& c : component_map(R, PN_, deg).columns) e.insert(c);
    rel.push_back(std::move(e));
  }
  std::vector<SparseVec<K>> cols;
  for (std::size_t j = 0; j < b1; ++j) {
    const long deg = d1_.cols[j] + D;
    const std::size_t dim = free_layout(R, rN, deg).total;
    for (std::size_t q = 0; q < dim; ++q) {
      const auto e = free_from_coords(R, SparseVec<K>{{static_cast<std::uint32_t>(q), R.ring().scalar(1)}}, rN, deg);
      SparseVec<K> image;
      for (std::size_t k = 0; k < b2; ++k) {
        const auto& a = d2_.mat(j, k);
        if (a.is_zero()) continue;
        std::vector<Polynomial<K>> v(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) v[i] = a * e[i];
        for (const auto& [idx, c] : rel[k].reduce(free_coords(R, v, rN, d2_.cols[k] + D))) {
          image.emplace_back(static_cast<std::uint32_t>(off2[k] + idx), c);
        }
      }
      std::sort(image.begin(), image.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      cols.push_back(std::move(image));
    }
  }
  auto Z = nullspace(cols, total2, R.ring().scalar(1));

  p->ech = Echelon<K>(p->total, true);
  // coboundaries: G d_1 for G : F_0(M) -> F_0(N), and the relations of N in each column
  for (std::size_t i = 0; i < m; ++i) {
    const long deg = d1_.rows[i] + D;
    const std::size_t dim = free_layout(R, rN, deg).total;
    for (std::size_t q = 0; q < dim; ++q) {
      const auto g = free_from_coords(R, SparseVec<K>{{static_cast<std::uint32_t>(q), R.ring().scalar(1)}}, rN, deg);
      SparseVec<K> v;
      for (std::size_t j = 0; j < b1; ++j) {
        const auto& a = d1_.mat(i, j);
        if (a.is_zero()) continue;
        std::vector<Polynomial<K>> col(g.size());
        for (std::size_t r = 0; r < g.size(); ++r) col[r] = a * g[r];
        for (const auto& [idx, c] : free_coords(R, col, rN, d1_.cols[j] + D)) {
          v.emplace_back(static_cast<std::uint32_t>(p->offset[j] + idx), c);
        }
      }
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      p->ech.insert(v);
    }
  }
  for (std::size_t j = 0; j < b1; ++j) {
    for (const auto& c : component_map(R, PN_, d1_.cols[j] + D).columns) {
      SparseVec<K> v;
      for (const auto& [idx, a] : c) v.emplace_back(static_cast<std::uint32_t>(p->offset[j] + idx), a);
      p->ech.insert(v);
    }
  }
  for (const auto& z : Z) {
    if (p->ech.insert(z, static_cast<std::uint32_t>(p->reps.size()))) p->reps.push_back(z);
  }
  auto& out = *p;
  pieces_.emplace(D, std::move(p));
  return out;
}

template <class K>
std::vector<std::vector<K>> ExtGroup<K>::elements(std::size_t limit) const {
  const auto& field = M_.ring().field;
  std::vector<std::vector<K>> out{std::vector<K>(dim(), M_.ring().scalar(0))};
  if (dim() == 0) return out;
  const std::uint64_t p = field.characteristic;
  if (p == 0) throw InputError("enumerating Ext needs a prime field");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    count *= p;
    if (count > limit) throw InputError("Ext group has more than " + std::to_string(limit) + " elements");
  }
  out.clear();
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<K> v;
    std::uint64_t r = idx;
    for (std::size_t i = 0; i < dim(); ++i) {
      v.push_back(M_.ring().scalar(static_cast<std::int64_t>(r % p)));
      r /= p;
    }
    out.push_back(std::move(v));
  }
  return out;
}

template <class K>
PolyMatrix<K> ExtGroup<K>::cocycle(const std::vector<K>& coords) const {
  if (coords.size() != dim()) throw InputError("coordinate vector has the wrong length");
  const auto& R = *R_;
  PolyMatrix<K> H(PN_.mat.rows(), d1_.mat.cols());
  for (std::size_t g = 0; g < coords.size(); ++g) {
    if (coords[g].is_zero()) continue;
    const auto [D, t] = index_[g];
    const auto& p = piece(D);
    const auto& rep = p.reps[t];
    for (std::size_t j = 0; j < H.cols(); ++j) {
      const std::size_t lo = p.offset[j];
      const std::size_t hi = j + 1 < H.cols() ? p.offset[j + 1] : p.total;
      SparseVec<K> block;
      for (const auto& [idx, c] : rep) {
        if (idx >= lo && idx < hi) block.emplace_back(static_cast<std::uint32_t>(idx - lo), c * coords[g]);
      }
      if (block.empty()) continue;
      const auto col = free_from_coords(R, block, PN_.rows, d1_.cols[j] + D);
      for (std::size_t i = 0; i < H.rows(); ++i) H(i, j) += col[i];
    }
  }
  return H;
}

template <class K>
std::vector<K> ExtGroup<K>::classify_in(const PolyMatrix<K>& H, long D) const {
  const auto& R = *R_;
  const auto& w = R.weights();
  const auto& p = piece(D);
  SparseVec<K> v;
  for (std::size_t j = 0; j < H.cols(); ++j) {
    const long deg = d1_.cols[j] + D;
    std::vector<Polynomial<K>> col(H.rows());
    for (std::size_t i = 0; i < H.rows(); ++i) col[i] = H(i, j).component(w, deg - PN_.rows[i]);
    for (const auto& [idx, c] : free_coords(R, col, PN_.rows, deg)) {
      v.emplace_back(static_cast<std::uint32_t>(p.offset[j] + idx), c);
    }
  }
  SparseVec<K> combo;
  if (!p.ech.reduce_tracked(v, combo).empty()) {
    throw InvariantViolation("matrix is not a cocycle in degree " + std::to_string(D));
  }
  std::vector<K> out(p.reps.size(), R.ring().scalar(0));
  for (const auto& [t, c] : combo) out[t] = c;
  return out;
}

template <class K>
std::vector<K> ExtGroup<K>::classify(const PolyMatrix<K>& H) const {
  if (H.rows() != PN_.mat.rows() || H.cols() != d1_.mat.cols()) throw InputError("cocycle has the wrong shape");
  const auto& w = R_->weights();
  std::set<long> present;
  for (std::size_t i = 0; i < H.rows(); ++i) {
    for (std::size_t j = 0; j < H.cols(); ++j) {
      for (const auto& [mono, c] : H(i, j).terms()) present.insert(mono.weighted_degree(w) + PN_.rows[i] - d1_.cols[j]);
    }
  }
  std::vector<K> out(dim(), M_.ring().scalar(0));
  for (long D : present) {
    auto local = classify_in(H, D);
    const bool in_window = std::find(window_.begin(), window_.end(), D) != window_.end();
    if (!in_window) {
      if (!local.empty()) throw InvariantViolation("class in degree " + std::to_string(D) + " lies outside the window");
      continue;
    }
    for (std::size_t g = 0; g < dim(); ++g) {
      if (index_[g].first == D) out[g] = local[index_[g].second];
    }
  }
  return out;
}

template <class K>
ShortExactSequence<K> ExtGroup<K>::extension(const std::vector<K>& coords) const {
  return extension_from_cocycle(M_, N_, cocycle(coords));
}

template <class K>
std::vector<K> ExtGroup<K>::class_of(const ShortExactSequence<K>& s) const {
  check_shapes(s);
  if (!(s.N.presentation() == N_.presentation()) || !(s.M.presentation() == M_.presentation())) {
    throw InputError("sequence end terms differ from those of the Ext group");
  }
  std::vector<K> out(dim(), M_.ring().scalar(0));
  if (d1_.mat.cols() == 0 || PN_.mat.rows() == 0) return out;
  const auto& R = *R_;
  DegreeGraph g;
  const auto nodes = add_sequence(g, s);
  for (std::size_t i = 0; i < PN_.rows.size(); ++i) g.pin(nodes.Nr + i, PN_.rows[i]);
  auto deg = g.solve();
  if (!deg) throw NotGraded("the sequence admits no grading extending that of N");
  const std::size_t n = PN_.mat.rows(), e = s.E.num_generators(), m = d1_.mat.rows();
  const long D = (*deg)[nodes.Mr] - d1_.rows[0];
  for (std::size_t i = 0; i < m; ++i) {
    if ((*deg)[nodes.Mr + i] - d1_.rows[i] != D) throw NotGraded("the class mixes several internal degrees");
  }
  auto degs = [&](std::size_t base, std::size_t count) { return slice_of(*deg, base, count); };
  const auto& PM = M_.presentation();
  const auto& PE = s.E.presentation();
  std::vector<long> mcols;
  for (long c : d1_.cols) mcols.push_back(c + D);
  GradedSolver<K> lift(R, GradedMatrix<K>{PolyMatrix<K>::hstack(s.project, PM), degs(nodes.Mr, m),
                                          concat(degs(nodes.Er, e), mcols)});
  PolyMatrix<K> U(e, m);
  for (std::size_t k = 0; k < m; ++k) {
    auto x = lift.solve(unit_vector(R.ring(), m, k), (*deg)[nodes.Mr + k]);
    if (!x) throw InputError("project is not onto");
    U.set_col(k, head(*x, e));
  }
  GradedSolver<K> back(R, GradedMatrix<K>{PolyMatrix<K>::hstack(s.inject, PE), degs(nodes.Er, e),
                                          concat(degs(nodes.Nr, n), degs(nodes.Ec, PE.cols()))});
  PolyMatrix<K> H(n, PM.cols());
  for (std::size_t j = 0; j < PM.cols(); ++j) {
    auto v = times(U, PM.col(j));
    if (std::all_of(v.begin(), v.end(), [](const auto& p) { return p.is_zero(); })) continue;
    auto x = back.solve(v, mcols[j]);
    if (!x) throw InputError("the sequence is not exact at the middle term");
    H.set_col(j, head(*x, n));
  }
  const auto local = classify_in(H, D);
  const bool in_window = std::find(window_.begin(), window_.end(), D) != window_.end();
  if (!in_window) {
    if (std::any_of(local.begin(), local.end(), [](const K& c) { return !c.is_zero(); })) {
      throw InvariantViolation("class in degree " + std::to_string(D) + " lies outside the window");
    }
    return out;
  }
  for (std::size_t g2 = 0; g2 < dim(); ++g2) {
    if (index_[g2].first == D) out[g2] = local[index_[g2].second];
  }
  return out;
}

#define MCMLAB_INSTANTIATE(K)                                                                                   \
  template std::int64_t tor_length<K>(std::size_t, const Module<K>&, const FiltrationSpec<K>&, long, std::size_t); \
  template TorTable tor_table<K>(std::size_t, const Module<K>&, const FiltrationSpec<K>&, long, long, std::size_t); \
  template TorTable tor_table<K>(std::size_t, const std::vector<GradedMatrix<K>>&, RingPtr<K>,                  \
                                 const FiltrationSpec<K>&, long, long, std::size_t);                              \
  template ETorReport etor<K>(const Module<K>&, const FiltrationSpec<K>&, EtorMethod, std::size_t);              \
  template ExactnessReport verify_exactness<K>(const ShortExactSequence<K>&, long, bool);                         \
  template ShortExactSequence<K> split_sequence<K>(const Module<K>&, const Module<K>&);                           \
  template SequenceETor etor_of_sequence<K>(const ShortExactSequence<K>&, const FiltrationSpec<K>&, EtorMethod,  \
                                            std::size_t);                                                         \
  template SequenceETor etor_of_sequence<K>(const ShortExactSequence<K>&, const FiltrationSpec<K>&, std::int64_t, \
                                            std::int64_t, EtorMethod, std::size_t);                               \
  template bool is_tsplit<K>(const ShortExactSequence<K>&, const FiltrationSpec<K>&);                             \
  template bool map_well_defined<K>(const PolyMatrix<K>&, const Module<K>&, const Module<K>&, long);              \
  template ShortExactSequence<K> minimalize_sequence<K>(const ShortExactSequence<K>&);                            \
  template ShortExactSequence<K> pushout<K>(const ShortExactSequence<K>&, const PolyMatrix<K>&, const Module<K>&); \
  template ShortExactSequence<K> pullback<K>(const ShortExactSequence<K>&, const PolyMatrix<K>&, const Module<K>&); \
  template ShortExactSequence<K> scalar_mult<K>(const Polynomial<K>&, const ShortExactSequence<K>&);              \
  template ShortExactSequence<K> baer_sum<K>(const ShortExactSequence<K>&, const ShortExactSequence<K>&);         \
  template std::optional<long> annihilation_index<K>(const ShortExactSequence<K>&, const Polynomial<K>&,          \
                                                     const FiltrationSpec<K>&, long);                             \
  template Cosyzygy<K> cosyzygy<K>(const Module<K>&);                                                             \
  template ShortExactSequence<K> cone_extension<K>(const Module<K>&, const Module<K>&, const PolyMatrix<K>&);     \
  template ShortExactSequence<K> extension_from_cocycle<K>(const Module<K>&, const Module<K>&,                   \
                                                           const PolyMatrix<K>&);                                 \
  template class ExtGroup<K>;

MCMLAB_INSTANTIATE(Fp)
MCMLAB_INSTANTIATE(Rational)

}  // namespace mcmlab
