#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mcmlab/linalg.hpp"
#include "mcmlab/matrix.hpp"
#include "mcmlab/truncate.hpp"

namespace mcmlab {

/// Weighted-graded model of A: finite-dimensional slices A_D, each with a
/// normal form modulo the degree-D part of the relation ideal. Slices are
/// built on demand and cached; the cache is guarded so that a shared ring
/// can serve several threads.
template <class K>
class GradedRing {
 public:
  explicit GradedRing(RingPtr<K> ring);

  const RingSpec<K>& ring() const { return *ring_; }
  RingPtr<K> ring_ptr() const { return ring_; }
  const std::vector<int>& weights() const { return ring_->weights; }

  /// Weighted degree of a homogeneous nonzero polynomial; NotGraded otherwise.
  long degree(const Polynomial<K>& p) const;
  std::size_t dim(long D) const;
  const std::vector<Monomial>& basis(long D) const;
  SparseVec<K> coords(const Polynomial<K>& p, long D) const;
  Polynomial<K> from_coords(const SparseVec<K>& v, long D) const;

 private:
  struct Slice {
    std::vector<Monomial> monos;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
    Echelon<K> ideal;
    std::vector<std::int32_t> basis_of_mono;
    std::vector<Monomial> basis;
  };
  const Slice& slice(long D) const;

  RingPtr<K> ring_;
  mutable std::mutex mutex_;
  mutable std::map<long, std::unique_ptr<Slice>> cache_;
};

/// A polynomial matrix with degrees on rows (target generators) and
/// columns (source generators): entry (i,j) is zero or homogeneous of degree
/// cols[j] - rows[i].
template <class K>
struct GradedMatrix {
  PolyMatrix<K> mat;
  std::vector<long> rows;
  std::vector<long> cols;
};

/// Solves for node degrees from constraints deg(a) - deg(b) = delta by
/// breadth-first search. Each connected component is shifted so that its
/// smallest degree is 0.
class DegreeGraph {
 public:
  std::size_t add_nodes(std::size_t n);
  void relate(std::size_t a, std::size_t b, long delta);
  /// Fixes a node's degree; its component is shifted to honor it.
  void pin(std::size_t node, long degree);
  std::optional<std::vector<long>> solve() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::pair<std::size_t, long>>> adj_;
  std::map<std::size_t, long> pins_;
};

/// Adds the constraints of a matrix whose rows are nodes row_base.. and
/// columns col_base..; throws NotGraded on a non-homogeneous entry.
template <class K>
void add_matrix_constraints(DegreeGraph& g, const PolyMatrix<K>& m, std::size_t row_base,
                            std::size_t col_base, const std::vector<int>& weights);

/// Degrees for rows and columns of a single matrix.
template <class K>
GradedMatrix<K> grade(const PolyMatrix<K>& m, const std::vector<int>& weights);

/// Column degrees from given row degrees; zero columns get degree 0.
template <class K>
GradedMatrix<K> grade_with_rows(const PolyMatrix<K>& m, const std::vector<long>& rows,
                                const std::vector<int>& weights);

/// Coordinates of free modules F = sum A(-degs[i]) in degree D.
struct FreeLayout {
  std::vector<std::size_t> offset;
  std::size_t total = 0;
};

template <class K>
FreeLayout free_layout(const GradedRing<K>& R, const std::vector<long>& degs, long D);

template <class K>
SparseVec<K> free_coords(const GradedRing<K>& R, const std::vector<Polynomial<K>>& v,
                         const std::vector<long>& degs, long D);

template <class K>
std::vector<Polynomial<K>> free_from_coords(const GradedRing<K>& R, const SparseVec<K>& v,
                                            const std::vector<long>& degs, long D);

/// The k-linear map P: (F_cols)_D -> (F_rows)_D.
template <class K>
LinearMap<K> component_map(const GradedRing<K>& R, const GradedMatrix<K>& P, long D);

struct KernelOptions {
  int headroom = 4;
  std::size_t cap = kDefaultDimCap;
};

/// Minimal homogeneous generators of ker(P), found degree by degree. The
/// search stops `headroom` degrees past both the last new generator and
/// max(col degree) + max(relation or entry degree); a slice above the cap
/// raises TruncationInsufficient.
template <class K>
GradedMatrix<K> graded_kernel(const GradedRing<K>& R, const GradedMatrix<K>& P,
                              const KernelOptions& opt = {});

/// Indices of a minimal generating set of the column module, kept in
/// degree order.
template <class K>
std::vector<std::size_t> minimal_columns(const GradedRing<K>& R, const GradedMatrix<K>& P);

/// Solves P x = b for homogeneous b of degree D, one echelon per degree.
template <class K>
class GradedSolver {
 public:
  GradedSolver(const GradedRing<K>& R, GradedMatrix<K> P);
  std::optional<std::vector<Polynomial<K>>> solve(const std::vector<Polynomial<K>>& b, long D) const;
  const GradedMatrix<K>& matrix() const { return P_; }

 private:
  const GradedRing<K>& R_;
  GradedMatrix<K> P_;
  mutable std::map<long, std::unique_ptr<Echelon<K>>> cache_;
};

/// Degree of a homogeneous vector with respect to row degrees; nullopt for zero.
template <class K>
std::optional<long> vector_degree(const GradedRing<K>& R, const std::vector<Polynomial<K>>& v,
                                  const std::vector<long>& degs);

}  // namespace mcmlab
