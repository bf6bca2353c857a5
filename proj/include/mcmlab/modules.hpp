#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcmlab/graded.hpp"
#include "mcmlab/matrix.hpp"
#include "mcmlab/ring.hpp"

namespace mcmlab {

/// Square phi, psi over the ambient ring with phi*psi = psi*phi = f*I.
template <class K>
struct MatrixFactorization {
  PolyMatrix<K> phi;
  PolyMatrix<K> psi;
};

struct CheckResult {
  bool ok = true;
  std::string message;
};

/// Exact check of phi*psi = psi*phi = f*I; the message names the first bad entry.
template <class K>
CheckResult mf_validate(const RingSpec<K>& ring, const MatrixFactorization<K>& mf);

/// A finitely generated module M = coker(P : A^cols -> A^rows), optionally
/// backed by a matrix factorization: then M = coker(phi) + A^free_rank and
/// P = [phi; 0]. The generators of M are the rows of P in both cases.
template <class K>
class Module {
 public:
  static Module from_presentation(RingPtr<K> ring, PolyMatrix<K> P, std::string label = "");
  /// Validates the factorization; throws InputError if it fails.
  static Module from_mf(RingPtr<K> ring, MatrixFactorization<K> mf, std::size_t free_rank = 0,
                        std::string label = "");
  static Module free(RingPtr<K> ring, std::size_t rank, std::string label = "");

  const RingSpec<K>& ring() const { return *ring_; }
  RingPtr<K> ring_ptr() const { return ring_; }
  bool is_mf() const { return mf_.has_value(); }
  const MatrixFactorization<K>& mf() const { return *mf_; }
  std::size_t free_rank() const { return free_rank_; }
  const PolyMatrix<K>& presentation() const { return P_; }
  std::size_t num_generators() const { return P_.rows(); }
  const std::string& label() const { return label_; }
  Module with_label(std::string label) const;
  /// The same module forgetting its factorization.
  Module as_presentation() const;

 private:
  RingPtr<K> ring_;
  PolyMatrix<K> P_;
  std::optional<MatrixFactorization<K>> mf_;
  std::size_t free_rank_ = 0;
  std::string label_;
};

/// Minimal number of generators: rows minus the rank of P at the origin.
template <class K>
std::size_t mu(const Module<K>& M);

/// Graded minimal presentation with the generator change recorded:
/// to_min (mu x rows) sends old generators to new ones, from_min
/// (rows x mu) embeds new generators as combinations of old ones.
template <class K>
struct MinimalForm {
  GradedMatrix<K> P;
  PolyMatrix<K> to_min;
  PolyMatrix<K> from_min;
};

/// Degrees of generators and relations solved from the entries.
template <class K>
GradedMatrix<K> graded_presentation(const Module<K>& M);

template <class K>
MinimalForm<K> minimal_form(const GradedRing<K>& R, const GradedMatrix<K>& P);

/// Eliminates unit entries until none is left. For graded modules this
/// is exact and also drops redundant relations; for a non-graded
/// presentation only constant entries are eliminated and a remaining
/// local unit keeps the result non-minimal (mu() is still exact).
/// Factorizations lose their (f | 1) and (1 | f) blocks.
template <class K>
Module<K> minimalize(const Module<K>& M);

/// Removes unit entries from a factorization; each unit of psi becomes
/// one free summand.
template <class K>
std::pair<MatrixFactorization<K>, std::size_t> reduce_mf(const MatrixFactorization<K>& mf);

/// d[0] = d_1 : F_1 -> F_0, ..., d[len-1] = d_len. For factorizations the
/// maps alternate phi, psi (degrees empty over an ungraded ring); otherwise
/// kernels come from the graded engine.
template <class K>
std::vector<GradedMatrix<K>> resolution(const Module<K>& M, std::size_t length,
                                        const KernelOptions& opt = {}, bool minimal = false);

/// Minimal i-th syzygy module.
template <class K>
Module<K> syzygy(const Module<K>& M, std::size_t i, const KernelOptions& opt = {});

/// beta_0 .. beta_upto of the minimal resolution.
template <class K>
std::vector<std::size_t> betti_numbers(const Module<K>& M, std::size_t upto,
                                       const KernelOptions& opt = {});

struct ComplexityReport {
  std::optional<int> complexity;
  int fit_degree = -1;
  long stabilization_index = 0;
  std::string note;
};

/// 1 + degree of the exact polynomial tail of the Betti numbers; 0 when
/// they vanish eventually. Needs at least 6 entries.
ComplexityReport complexity_estimate(const std::vector<std::size_t>& betti);

template <class K>
bool is_free(const Module<K>& M);

/// M = L + A^r with L free of free summands.
template <class K>
std::pair<Module<K>, std::size_t> free_summand_split(const Module<K>& M);

template <class K>
Module<K> direct_sum(const Module<K>& M, const Module<K>& N);

/// Matrix factorization of a graded module over a hypersurface, found from
/// a minimal presentation over the ambient ring of [P | f*I]. Throws if that
/// presentation is not square, i.e. M is not maximal Cohen-Macaulay.
template <class K>
Module<K> to_mf(const Module<K>& M);

/// Injectivity on M, in the given number of degrees, of a random element of
/// the lowest positive degree of a one-dimensional graded ring: evidence for
/// depth one, not a proof.
template <class K>
CheckResult mcm_probe(const Module<K>& M, unsigned seed = 1, long degrees = 8);

}  // namespace mcmlab
