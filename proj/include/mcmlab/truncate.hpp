#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mcmlab/linalg.hpp"
#include "mcmlab/matrix.hpp"
#include "mcmlab/ring.hpp"

namespace mcmlab {

inline constexpr std::size_t kDefaultDimCap = 200000;

/// k-linear model of A/(J + m^{level+1}) with J = relations + extra
/// generators. Basis: monomials outside the echelon pivots, degree-lex
/// ascending, so each degree slice is contiguous.
template <class K>
class TruncatedAlgebra {
 public:
  const RingSpec<K>& ring() const { return *core_->ring; }
  unsigned level() const { return level_; }
  std::size_t dim() const { return dim_; }
  /// Basis monomials of degree <= level.
  std::vector<Monomial> basis() const;
  std::size_t dim_in_degree(unsigned d) const;

  /// Coordinates of the normal form of p in the basis.
  SparseVec<K> coords(const Polynomial<K>& p) const;
  Polynomial<K> from_coords(const SparseVec<K>& v) const;
  Polynomial<K> reduce(const Polynomial<K>& p) const { return from_coords(coords(p)); }
  bool is_zero(const Polynomial<K>& p) const { return coords(p).empty(); }

  /// The same quotient at a lower level; shares the echelon data.
  TruncatedAlgebra restrict(unsigned l) const;
  /// Least l <= level with no basis monomial of degree l. Then m^l lies in J
  /// by Nakayama, so this model is A/J itself and not just a truncation.
  std::optional<unsigned> certified_power() const;

 private:
  struct Core {
    RingPtr<K> ring;
    unsigned level = 0;
    std::vector<Monomial> monos;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
    std::vector<std::size_t> degree_start;
    Echelon<K> ech;
    std::vector<std::int32_t> basis_of_mono;
    std::vector<std::uint32_t> mono_of_basis;
  };
  std::shared_ptr<const Core> core_;
  unsigned level_ = 0;
  std::size_t dim_ = 0;

  SparseVec<K> mono_vector(const Polynomial<K>& p, unsigned level) const;

  template <class L>
  friend TruncatedAlgebra<L> build_truncation(RingPtr<L> ring, const std::vector<Polynomial<L>>& extra,
                                              unsigned level, std::size_t cap);
};

template <class K>
TruncatedAlgebra<K> build_truncation(RingPtr<K> ring, const std::vector<Polynomial<K>>& extra,
                                     unsigned level, std::size_t cap = kDefaultDimCap);

/// Builds at increasing levels until the model is certified exact, i.e.
/// m^l lies in J for some l. J must be m-primary.
template <class K>
TruncatedAlgebra<K> build_certified(RingPtr<K> ring, const std::vector<Polynomial<K>>& gens,
                                    unsigned start_level, std::size_t cap = kDefaultDimCap);

/// Exact matrix of a k-linear map, stored by columns.
template <class K>
struct LinearMap {
  std::size_t domain_dim = 0;
  std::size_t codomain_dim = 0;
  std::vector<SparseVec<K>> columns;

  std::size_t rank() const { return rank_of(columns, codomain_dim); }
  std::size_t kernel_dim() const { return domain_dim - rank(); }
  std::size_t coker_dim() const { return codomain_dim - rank(); }
};

/// Multiplication by a on T.
template <class K>
LinearMap<K> mult_map(const Polynomial<K>& a, const TruncatedAlgebra<K>& T);

/// P (x) T : T^cols -> T^rows. Coordinates of T^r are blocks of T's basis.
template <class K>
LinearMap<K> tensor_map(const PolyMatrix<K>& P, const TruncatedAlgebra<K>& T);

/// Coordinates of a vector of polynomials in T^r.
template <class K>
SparseVec<K> tensor_coords(const std::vector<Polynomial<K>>& v, const TruncatedAlgebra<K>& T);

}  // namespace mcmlab
