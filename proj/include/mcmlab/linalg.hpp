#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mcmlab/field.hpp"

namespace mcmlab {

/// Sparse vector: (index, nonzero value) pairs sorted by index.
template <class K>
using SparseVec = std::vector<std::pair<std::uint32_t, K>>;

template <class K>
SparseVec<K> add_scaled(const SparseVec<K>& a, const SparseVec<K>& b, const K& c);

/// Incremental row echelon form. The pivot of a stored vector is its lowest
/// index, so lower indices are eliminated first; with degree-ascending
/// coordinates this reduces toward high degree, as a local order requires.
/// Optionally tracks each stored vector as a combination of inserted tags.
template <class K>
class Echelon {
 public:
  static constexpr std::uint32_t kNoTag = std::numeric_limits<std::uint32_t>::max();

  explicit Echelon(std::size_t dim = 0, bool track = false);

  std::size_t dim() const { return pivot_of_.size(); }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::uint32_t i) const { return pivot_of_[i] >= 0; }

  /// Stores v if independent. With tracking, a dependent v yields in
  /// *relation a tag combination (including v's own tag) that sums to zero.
  bool insert(const SparseVec<K>& v, std::uint32_t tag = kNoTag, SparseVec<K>* relation = nullptr);
  /// Canonical normal form: support avoids every pivot index.
  SparseVec<K> reduce(const SparseVec<K>& v) const;
  /// v = residual + sum combo[t] * (vector inserted with tag t).
  SparseVec<K> reduce_tracked(const SparseVec<K>& v, SparseVec<K>& combo) const;
  bool contains(const SparseVec<K>& v) const { return reduce(v).empty(); }

 private:
  std::vector<int> pivot_of_;
  std::vector<SparseVec<K>> rows_;
  std::vector<SparseVec<K>> combos_;
  bool track_;
};

/// Rank of a list of vectors.
template <class K>
std::size_t rank_of(const std::vector<SparseVec<K>>& vecs, std::size_t dim);

/// Basis of {a : sum a_j cols[j] = 0}, each as a sparse vector over j.
template <class K>
std::vector<SparseVec<K>> nullspace(const std::vector<SparseVec<K>>& cols, std::size_t dim,
                                    const K& one);

}  // namespace mcmlab
