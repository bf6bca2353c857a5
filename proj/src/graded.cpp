#include "mcmlab/graded.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "mcmlab/errors.hpp"

namespace mcmlab {

template <class K>
GradedRing<K>::GradedRing(RingPtr<K> ring) : ring_(std::move(ring)) {
  if (!ring_->graded()) throw NotGraded("the ring has no positive grading making its relations homogeneous");
}

template <class K>
long GradedRing<K>::degree(const Polynomial<K>& p) const {
  if (p.is_zero()) throw NotGraded("the zero polynomial has no degree");
  if (!p.is_homogeneous(weights())) throw NotGraded("polynomial " + ring_->print(p) + " is not homogeneous");
  return p.terms().front().first.weighted_degree(weights());
}

template <class K>
const typename GradedRing<K>::Slice& GradedRing<K>::slice(long D) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(D);
  if (it != cache_.end()) return *it->second;
  auto s = std::make_unique<Slice>();
  s->monos = monomials_of_weighted_degree(weights(), D);
  for (std::uint32_t i = 0; i < s->monos.size(); ++i) s->index.emplace(s->monos[i], i);
  s->ideal = Echelon<K>(s->monos.size());
  for (const auto& g : ring_->relations) {
    const long e = g.terms().front().first.weighted_degree(weights());
    for (const auto& m : monomials_of_weighted_degree(weights(), D - e)) {
      SparseVec<K> v;
      const auto gm = g * m;
      for (const auto& [mm, c] : gm.terms()) v.emplace_back(s->index.at(mm), c);
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      s->ideal.insert(v);
    }
  }
  s->basis_of_mono.assign(s->monos.size(), -1);
  for (std::uint32_t i = 0; i < s->monos.size(); ++i) {
    if (!s->ideal.is_pivot(i)) {
      s->basis_of_mono[i] = static_cast<std::int32_t>(s->basis.size());
      s->basis.push_back(s->monos[i]);
    }
  }
  return *cache_.emplace(D, std::move(s)).first->second;
}

template <class K>
std::size_t GradedRing<K>::dim(long D) const {
  return D < 0 ? 0 : slice(D).basis.size();
}

template <class K>
const std::vector<Monomial>& GradedRing<K>::basis(long D) const {
  static const std::vector<Monomial> empty;
  return D < 0 ? empty : slice(D).basis;
}

template <class K>
SparseVec<K> GradedRing<K>::coords(const Polynomial<K>& p, long D) const {
  if (p.is_zero()) return {};
  if (D < 0) throw NotGraded("negative degree for a nonzero polynomial");
  const Slice& s = slice(D);
  SparseVec<K> v;
  for (const auto& [m, c] : p.terms()) {
    auto it = s.index.find(m);
    if (it == s.index.end()) {
      throw NotGraded("term of " + ring_->print(p) + " is not of degree " + std::to_string(D));
    }
    v.emplace_back(it->second, c);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec<K> nf = s.ideal.reduce(v);
  for (auto& e : nf) e.first = static_cast<std::uint32_t>(s.basis_of_mono[e.first]);
  return nf;
}

template <class K>
Polynomial<K> GradedRing<K>::from_coords(const SparseVec<K>& v, long D) const {
  std::vector<typename Polynomial<K>::Term> terms;
  const auto& b = basis(D);
  for (const auto& [i, c] : v) terms.emplace_back(b[i], c);
  return Polynomial<K>::from_terms(std::move(terms));
}

std::size_t DegreeGraph::add_nodes(std::size_t n) {
  std::size_t first = n_;
  n_ += n;
  adj_.resize(n_);
  return first;
}

void DegreeGraph::relate(std::size_t a, std::size_t b, long delta) {
  adj_[a].emplace_back(b, -delta);
  adj_[b].emplace_back(a, delta);
}

void DegreeGraph::pin(std::size_t node, long degree) { pins_[node] = degree; }

std::optional<std::vector<long>> DegreeGraph::solve() const {
  std::vector<long> deg(n_, 0);
  std::vector<char> seen(n_, 0);
  for (std::size_t start = 0; start < n_; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp{start};
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (const auto& [v, d] : adj_[u]) {
        // deg(v) = deg(u) + d
        if (!seen[v]) {
          seen[v] = 1;
          deg[v] = deg[u] + d;
          comp.push_back(v);
          queue.push_back(v);
        } else if (deg[v] != deg[u] + d) {
          return std::nullopt;
        }
      }
    }
    std::optional<long> shift;
    for (std::size_t u : comp) {
      auto p = pins_.find(u);
      if (p == pins_.end()) continue;
      long s = p->second - deg[u];
      if (shift && *shift != s) return std::nullopt;
      shift = s;
    }
    if (!shift) {
      long lo = std::numeric_limits<long>::max();
      for (std::size_t u : comp) lo = std::min(lo, deg[u]);
      shift = -lo;
    }
    for (std::size_t u : comp) deg[u] += *shift;
  }
  return deg;
}

template <class K>
void add_matrix_constraints(DegreeGraph& g, const PolyMatrix<K>& m, std::size_t row_base,
                            std::size_t col_base, const std::vector<int>& weights) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& p = m(i, j);
      if (p.is_zero()) continue;
      if (!p.is_homogeneous(weights)) throw NotGraded("matrix entry is not homogeneous");
      g.relate(col_base + j, row_base + i, p.terms().front().first.weighted_degree(weights));
    }
  }
}

template <class K>
GradedMatrix<K> grade(const PolyMatrix<K>& m, const std::vector<int>& weights) {
  DegreeGraph g;
  std::size_t r = g.add_nodes(m.rows()), c = g.add_nodes(m.cols());
  add_matrix_constraints(g, m, r, c, weights);
  auto deg = g.solve();
  if (!deg) throw NotGraded("matrix admits no consistent grading");
  GradedMatrix<K> out{m, {}, {}};
  out.rows.assign(deg->begin(), deg->begin() + m.rows());
  out.cols.assign(deg->begin() + m.rows(), deg->end());
  return out;
}

template <class K>
GradedMatrix<K> grade_with_rows(const PolyMatrix<K>& m, const std::vector<long>& rows,
                                const std::vector<int>& weights) {
  GradedMatrix<K> out{m, rows, std::vector<long>(m.cols(), 0)};
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::optional<long> d;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto& p = m(i, j);
      if (p.is_zero()) continue;
      if (!p.is_homogeneous(weights)) throw NotGraded("matrix entry is not homogeneous");
      long e = rows[i] + p.terms().front().first.weighted_degree(weights);
      if (d && *d != e) throw NotGraded("matrix column is not homogeneous for the row degrees");
      d = e;
    }
    if (d) out.cols[j] = *d;
  }
  return out;
}

template <class K>
FreeLayout free_layout(const GradedRing<K>& R, const std::vector<long>& degs, long D) {
  FreeLayout l;
  for (long a : degs) {
    l.offset.push_back(l.total);
    l.total += R.dim(D - a);
  }
  return l;
}

template <class K>
SparseVec<K> free_coords(const GradedRing<K>& R, const std::vector<Polynomial<K>>& v,
                         const std::vector<long>& degs, long D) {
  auto l = free_layout(R, degs, D);
  SparseVec<K> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (const auto& [b, c] : R.coords(v[i], D - degs[i])) {
      out.emplace_back(static_cast<std::uint32_t>(l.offset[i] + b), c);
    }
  }
  return out;
}

template <class K>
std::vector<Polynomial<K>> free_from_coords(const GradedRing<K>& R, const SparseVec<K>& v,
                                            const std::vector<long>& degs, long D) {
  auto l = free_layout(R, degs, D);
  std::vector<Polynomial<K>> out(degs.size());
  std::vector<SparseVec<K>> parts(degs.size());
  for (const auto& [idx, c] : v) {
    std::size_t i = std::upper_bound(l.offset.begin(), l.offset.end(), idx) - l.offset.begin() - 1;
    parts[i].emplace_back(static_cast<std::uint32_t>(idx - l.offset[i]), c);
  }
  for (std::size_t i = 0; i < degs.size(); ++i) {
    if (!parts[i].empty()) out[i] = R.from_coords(parts[i], D - degs[i]);
  }
  return out;
}

template <class K>
LinearMap<K> component_map(const GradedRing<K>& R, const GradedMatrix<K>& P, long D) {
  auto dom = free_layout(R, P.cols, D);
  auto cod = free_layout(R, P.rows, D);
  LinearMap<K> map;
  map.domain_dim = dom.total;
  map.codomain_dim = cod.total;
  map.columns.reserve(dom.total);
  for (std::size_t j = 0; j < P.mat.cols(); ++j) {
    const auto column = P.mat.col(j);
    for (const auto& b : R.basis(D - P.cols[j])) {
      std::vector<Polynomial<K>> image(column.size());
      for (std::size_t i = 0; i < column.size(); ++i) {
        if (!column[i].is_zero()) image[i] = column[i] * b;
      }
      map.columns.push_back(free_coords(R, image, P.rows, D));
    }
  }
  return map;
}

namespace {

template <class K>
long max_entry_degree(const GradedMatrix<K>& P) {
  long e = 0;
  for (std::size_t i = 0; i < P.mat.rows(); ++i) {
    for (std::size_t j = 0; j < P.mat.cols(); ++j) {
      if (!P.mat(i, j).is_zero()) e = std::max(e, P.cols[j] - P.rows[i]);
    }
  }
  return e;
}

// Span of all multiples b * g of the given generators in degree D.
template <class K>
void insert_multiples(const GradedRing<K>& R, Echelon<K>& ech,
                      const std::vector<std::vector<Polynomial<K>>>& gens,
                      const std::vector<long>& gen_deg, const std::vector<long>& degs, long D) {
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gen_deg[g] > D) continue;
    for (const auto& b : R.basis(D - gen_deg[g])) {
      std::vector<Polynomial<K>> v(gens[g].size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!gens[g][i].is_zero()) v[i] = gens[g][i] * b;
      }
      ech.insert(free_coords(R, v, degs, D));
    }
  }
}

}  // namespace

template <class K>
GradedMatrix<K> graded_kernel(const GradedRing<K>& R, const GradedMatrix<K>& P,
                              const KernelOptions& opt) {
  GradedMatrix<K> out;
  out.rows = P.cols;
  std::vector<std::vector<Polynomial<K>>> gens;
  std::vector<long> gen_deg;
  if (P.mat.cols() == 0) {
    out.mat = PolyMatrix<K>(0, 0);
    return out;
  }
  long max_rel = 0;
  for (const auto& f : R.ring().relations) max_rel = std::max(max_rel, R.degree(f));
  const long lo = *std::min_element(P.cols.begin(), P.cols.end());
  long hi = *std::max_element(P.cols.begin(), P.cols.end()) +
            std::max(max_rel, max_entry_degree(P)) + opt.headroom;
  const auto one = R.ring().scalar(1);
  for (long D = lo; D <= hi; ++D) {
    LinearMap<K> L = component_map(R, P, D);
    if (L.domain_dim > opt.cap) {
      throw TruncationInsufficient("kernel search reached degree " + std::to_string(D) +
                                   " where the slice dimension " + std::to_string(L.domain_dim) +
                                   " exceeds the cap " + std::to_string(opt.cap));
    }
    auto null = nullspace(L.columns, L.codomain_dim, one);
    if (null.empty()) continue;
    Echelon<K> span(L.domain_dim);
    insert_multiples(R, span, gens, gen_deg, P.cols, D);
    for (const auto& v : null) {
      if (span.insert(v)) {
        gens.push_back(free_from_coords(R, v, P.cols, D));
        gen_deg.push_back(D);
        if (D > hi - opt.headroom) hi = D + opt.headroom;
      }
    }
  }
  out.mat = PolyMatrix<K>(P.mat.cols(), gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) out.mat.set_col(g, gens[g]);
  out.cols = gen_deg;
  return out;
}

template <class K>
std::vector<std::size_t> minimal_columns(const GradedRing<K>& R, const GradedMatrix<K>& P) {
  std::vector<std::size_t> order(P.mat.cols());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return P.cols[a] < P.cols[b]; });
  std::vector<std::size_t> chosen;
  std::vector<std::vector<Polynomial<K>>> gens;
  std::vector<long> gen_deg;
  std::size_t k = 0;
  while (k < order.size()) {
    const long D = P.cols[order[k]];
    Echelon<K> span(free_layout(R, P.rows, D).total);
    insert_multiples(R, span, gens, gen_deg, P.rows, D);
    for (; k < order.size() && P.cols[order[k]] == D; ++k) {
      auto column = P.mat.col(order[k]);
      if (span.insert(free_coords(R, column, P.rows, D))) {
        chosen.push_back(order[k]);
        gens.push_back(column);
        gen_deg.push_back(D);
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

template <class K>
GradedSolver<K>::GradedSolver(const GradedRing<K>& R, GradedMatrix<K> P) : R_(R), P_(std::move(P)) {}

template <class K>
std::optional<std::vector<Polynomial<K>>> GradedSolver<K>::solve(const std::vector<Polynomial<K>>& b,
                                                                 long D) const {
  auto it = cache_.find(D);
  if (it == cache_.end()) {
    auto L = component_map(R_, P_, D);
    auto e = std::make_unique<Echelon<K>>(L.codomain_dim, true);
    for (std::size_t c = 0; c < L.columns.size(); ++c) e->insert(L.columns[c], static_cast<std::uint32_t>(c));
    it = cache_.emplace(D, std::move(e)).first;
  }
  SparseVec<K> combo;
  auto residual = it->second->reduce_tracked(free_coords(R_, b, P_.rows, D), combo);
  if (!residual.empty()) return std::nullopt;
  return free_from_coords(R_, combo, P_.cols, D);
}

template <class K>
std::optional<long> vector_degree(const GradedRing<K>& R, const std::vector<Polynomial<K>>& v,
                                  const std::vector<long>& degs) {
  std::optional<long> d;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    long e = degs[i] + R.degree(v[i]);
    if (d && *d != e) throw NotGraded("vector is not homogeneous");
    d = e;
  }
  return d;
}

#define MCMLAB_INSTANTIATE(K)                                                                     \
  template class GradedRing<K>;                                                                   \
  template void add_matrix_constraints<K>(DegreeGraph&, const PolyMatrix<K>&, std::size_t,        \
                                          std::size_t, const std::vector<int>&);                  \
  template GradedMatrix<K> grade<K>(const PolyMatrix<K>&, const std::vector<int>&);               \
  template GradedMatrix<K> grade_with_rows<K>(const PolyMatrix<K>&, const std::vector<long>&,     \
                                              const std::vector<int>&);                           \
  template FreeLayout free_layout<K>(const GradedRing<K>&, const std::vector<long>&, long);       \
  template SparseVec<K> free_coords<K>(const GradedRing<K>&, const std::vector<Polynomial<K>>&,   \
                                       const std::vector<long>&, long);                           \
  template std::vector<Polynomial<K>> free_from_coords<K>(const GradedRing<K>&,                   \
                                                          const SparseVec<K>&,                    \
                                                          const std::vector<long>&, long);        \
  template LinearMap<K> component_map<K>(const GradedRing<K>&, const GradedMatrix<K>&, long);     \
  template GradedMatrix<K> graded_kernel<K>(const GradedRing<K>&, const GradedMatrix<K>&,         \
                                            const KernelOptions&);                                \
  template std::vector<std::size_t> minimal_columns<K>(const GradedRing<K>&,                      \
                                                       const GradedMatrix<K>&);                   \
  template class GradedSolver<K>;                                                                 \
  template std::optional<long> vector_degree<K>(const GradedRing<K>&,                             \
                                                const std::vector<Polynomial<K>>&,                \
                                                const std::vector<long>&);

MCMLAB_INSTANTIATE(Fp)
MCMLAB_INSTANTIATE(Rational)

}  // namespace mcmlab
