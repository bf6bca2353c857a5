#include "mcmlab/truncate.hpp"

#include <algorithm>

#include "mcmlab/errors.hpp"

namespace mcmlab {

template <class K>
std::vector<Monomial> TruncatedAlgebra<K>::basis() const {
  std::vector<Monomial> out;
  out.reserve(dim_);
  for (std::size_t b = 0; b < dim_; ++b) out.push_back(core_->monos[core_->mono_of_basis[b]]);
  return out;
}

template <class K>
std::size_t TruncatedAlgebra<K>::dim_in_degree(unsigned d) const {
  if (d > level_) return 0;
  std::size_t n = 0;
  for (std::size_t i = core_->degree_start[d]; i < core_->degree_start[d + 1]; ++i) {
    if (core_->basis_of_mono[i] >= 0) ++n;
  }
  return n;
}

template <class K>
SparseVec<K> TruncatedAlgebra<K>::mono_vector(const Polynomial<K>& p, unsigned level) const {
  SparseVec<K> v;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() > level) break;
    v.emplace_back(core_->index.at(m), c);
  }
  return v;
}

template <class K>
SparseVec<K> TruncatedAlgebra<K>::coords(const Polynomial<K>& p) const {
  SparseVec<K> nf = core_->ech.reduce(mono_vector(p, level_));
  SparseVec<K> out;
  out.reserve(nf.size());
  const std::size_t top = core_->degree_start[level_ + 1];
  for (const auto& [i, c] : nf) {
    if (i >= top) break;
    out.emplace_back(static_cast<std::uint32_t>(core_->basis_of_mono[i]), c);
  }
  return out;
}

template <class K>
Polynomial<K> TruncatedAlgebra<K>::from_coords(const SparseVec<K>& v) const {
  std::vector<typename Polynomial<K>::Term> terms;
  for (const auto& [b, c] : v) terms.emplace_back(core_->monos[core_->mono_of_basis[b]], c);
  return Polynomial<K>::from_terms(std::move(terms));
}

template <class K>
TruncatedAlgebra<K> TruncatedAlgebra<K>::restrict(unsigned l) const {
  if (l > level_) throw InputError("cannot restrict a truncation to a higher level");
  TruncatedAlgebra t = *this;
  t.level_ = l;
  t.dim_ = 0;
  const std::size_t top = core_->degree_start[l + 1];
  while (t.dim_ < dim_ && core_->mono_of_basis[t.dim_] < top) ++t.dim_;
  return t;
}

template <class K>
std::optional<unsigned> TruncatedAlgebra<K>::certified_power() const {
  for (unsigned d = 0; d <= level_; ++d) {
    if (dim_in_degree(d) == 0) return d;
  }
  return std::nullopt;
}

template <class K>
TruncatedAlgebra<K> build_truncation(RingPtr<K> ring, const std::vector<Polynomial<K>>& extra,
                                     unsigned level, std::size_t cap) {
  using Core = typename TruncatedAlgebra<K>::Core;
  auto core = std::make_shared<Core>();
  core->ring = ring;
  core->level = level;
  const std::size_t nv = ring->nvars();
  for (unsigned d = 0; d <= level; ++d) {
    core->degree_start.push_back(core->monos.size());
    auto part = monomials_of_degree(nv, d);
    core->monos.insert(core->monos.end(), part.begin(), part.end());
    if (core->monos.size() > 10 * cap) {
      throw CapExceeded("truncation at level " + std::to_string(level) + " needs more than " +
                        std::to_string(10 * cap) + " monomials (dimension cap " +
                        std::to_string(cap) + ")");
    }
  }
  core->degree_start.push_back(core->monos.size());
  for (std::uint32_t i = 0; i < core->monos.size(); ++i) core->index.emplace(core->monos[i], i);
  core->ech = Echelon<K>(core->monos.size());

  std::vector<Polynomial<K>> gens = ring->relations;
  gens.insert(gens.end(), extra.begin(), extra.end());
  // Multiples are inserted by increasing degree of the product's lowest
  // term, which keeps the echelon rows short.
  std::vector<std::pair<unsigned, std::size_t>> order;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (!gens[g].is_zero()) order.emplace_back(gens[g].lowest_degree(), g);
  }
  for (unsigned d = 0; d <= level; ++d) {
    for (const auto& [low, g] : order) {
      if (low > d) continue;
      for (const auto& m : monomials_of_degree(nv, d - low)) {
        Polynomial<K> prod = gens[g] * m;
        SparseVec<K> v;
        for (const auto& [mm, c] : prod.terms()) {
          if (mm.degree() > level) break;
          v.emplace_back(core->index.at(mm), c);
        }
        if (!v.empty()) core->ech.insert(v);
      }
    }
  }
  core->basis_of_mono.assign(core->monos.size(), -1);
  for (std::uint32_t i = 0; i < core->monos.size(); ++i) {
    if (!core->ech.is_pivot(i)) {
      core->basis_of_mono[i] = static_cast<std::int32_t>(core->mono_of_basis.size());
      core->mono_of_basis.push_back(i);
    }
  }
  if (core->mono_of_basis.size() > cap) {
    throw CapExceeded("truncation dimension " + std::to_string(core->mono_of_basis.size()) +
                      " exceeds the cap " + std::to_string(cap));
  }
  TruncatedAlgebra<K> t;
  t.level_ = level;
  t.dim_ = core->mono_of_basis.size();
  t.core_ = std::move(core);
  return t;
}

template <class K>
TruncatedAlgebra<K> build_certified(RingPtr<K> ring, const std::vector<Polynomial<K>>& gens,
                                    unsigned start_level, std::size_t cap) {
  unsigned level = std::max(1u, start_level);
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto t = build_truncation(ring, gens, level, cap);
    if (t.certified_power()) return t;
    level *= 2;
  }
  throw CapExceeded("ideal does not appear to be primary to the maximal ideal: no power of m found up to degree " +
                    std::to_string(level));
}

template <class K>
LinearMap<K> mult_map(const Polynomial<K>& a, const TruncatedAlgebra<K>& T) {
  LinearMap<K> map;
  map.domain_dim = map.codomain_dim = T.dim();
  for (const auto& b : T.basis()) map.columns.push_back(T.coords(a * b));
  return map;
}

template <class K>
SparseVec<K> tensor_coords(const std::vector<Polynomial<K>>& v, const TruncatedAlgebra<K>& T) {
  SparseVec<K> out;
  const auto dim = static_cast<std::uint32_t>(T.dim());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (const auto& [b, c] : T.coords(v[i])) {
      out.emplace_back(static_cast<std::uint32_t>(i) * dim + b, c);
    }
  }
  return out;
}

template <class K>
LinearMap<K> tensor_map(const PolyMatrix<K>& P, const TruncatedAlgebra<K>& T) {
  LinearMap<K> map;
  map.domain_dim = P.cols() * T.dim();
  map.codomain_dim = P.rows() * T.dim();
  const auto basis = T.basis();
  for (std::size_t j = 0; j < P.cols(); ++j) {
    const auto column = P.col(j);
    for (const auto& b : basis) {
      std::vector<Polynomial<K>> image(column.size());
      for (std::size_t i = 0; i < column.size(); ++i) {
        if (!column[i].is_zero()) image[i] = column[i] * b;
      }
      map.columns.push_back(tensor_coords(image, T));
    }
  }
  return map;
}

#define MCMLAB_INSTANTIATE(K)                                                                      \
  template class TruncatedAlgebra<K>;                                                              \
  template TruncatedAlgebra<K> build_truncation<K>(RingPtr<K>, const std::vector<Polynomial<K>>&, \
                                                   unsigned, std::size_t);                         \
  template TruncatedAlgebra<K> build_certified<K>(RingPtr<K>, const std::vector<Polynomial<K>>&,  \
                                                  unsigned, std::size_t);                          \
  template LinearMap<K> mult_map<K>(const Polynomial<K>&, const TruncatedAlgebra<K>&);             \
  template SparseVec<K> tensor_coords<K>(const std::vector<Polynomial<K>>&,                        \
                                         const TruncatedAlgebra<K>&);                              \
  template LinearMap<K> tensor_map<K>(const PolyMatrix<K>&, const TruncatedAlgebra<K>&);

MCMLAB_INSTANTIATE(Fp)
MCMLAB_INSTANTIATE(Rational)

}  // namespace mcmlab
