#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcmlab/filtration.hpp"
#include "mcmlab/modules.hpp"

namespace mcmlab {

/// values[n] = length of Tor_i(M, A/F_{n+1}) for n = 0..hi.
struct TorTable {
  std::size_t i = 1;
  long window_lo = 0;
  long window_hi = 0;
  std::vector<std::int64_t> values;
};

/// nullity(d_i (x) T) - rank(d_{i+1} (x) T) with T = A/F_{n+1}; i = 0 gives
/// the length of M/F_{n+1}M.
template <class K>
std::int64_t tor_length(std::size_t i, const Module<K>& M, const FiltrationSpec<K>& F, long n,
                        std::size_t cap = kDefaultDimCap);

template <class K>
TorTable tor_table(std::size_t i, const Module<K>& M, const FiltrationSpec<K>& F, long lo, long hi,
                   std::size_t cap = kDefaultDimCap);

/// Same, from a resolution computed once (d[i-1] = d_i).
template <class K>
TorTable tor_table(std::size_t i, const std::vector<GradedMatrix<K>>& d, RingPtr<K> ring,
                   const FiltrationSpec<K>& F, long lo, long hi, std::size_t cap = kDefaultDimCap);

enum class EtorMethod { Limit, Formula, Both };

std::string to_string(EtorMethod m);
EtorMethod parse_etor_method(const std::string& s);

struct ETorReport {
  std::int64_t value = 0;
  EtorMethod method = EtorMethod::Both;
  std::optional<std::int64_t> limit_value;
  std::optional<std::int64_t> formula_value;
  bool method_agreement = true;
  /// From the Tor_1 fit (limit) or the Hilbert fits (formula).
  long stabilization_index = 0;
  long window_lo = 0;
  long window_hi = 0;
  /// Terms of e_1(A) mu - e_1(M) - e_1(Syz_1 M) when the formula ran.
  std::size_t mu = 0;
  BigInt e1_ring;
  BigInt e1_module;
  BigInt e1_syzygy;
  std::string mcm;
};

/// e^T of an MCM module. Disagreeing methods raise InvariantViolation, and
/// so does a Tor_1 table growing faster than n^{d-1}.
template <class K>
ETorReport etor(const Module<K>& M, const FiltrationSpec<K>& F, EtorMethod method = EtorMethod::Both,
                std::size_t cap = kDefaultDimCap);

/// 0 -> N -> E -> M -> 0; inject is E.rows x N.rows and project is
/// M.rows x E.rows, both acting on generators.
template <class K>
struct ShortExactSequence {
  Module<K> N;
  Module<K> E;
  Module<K> M;
  PolyMatrix<K> inject;
  PolyMatrix<K> project;
};

struct ExactnessReport {
  bool ok = true;
  long level = 0;
  std::vector<std::string> failures;
  /// Lengths of E, M, N modulo m^{l+1} add up at every checked level l.
  bool length_additive = true;
  bool injectivity_checked = false;
};

/// Checks that the maps are well defined, project o inject = 0, project is
/// onto, and ker = im after tensoring with A/m^{l+1} for l <= level. With
/// check_injective, inject is tested through e_0(E) = e_0(N) + e_0(M), which
/// detects a kernel when N is MCM.
template <class K>
ExactnessReport verify_exactness(const ShortExactSequence<K>& s, long level = 6, bool check_injective = true);

template <class K>
ShortExactSequence<K> split_sequence(const Module<K>& N, const Module<K>& M);

struct SequenceETor {
  std::int64_t value = 0;
  bool tsplit = false;
  std::int64_t etor_N = 0;
  std::int64_t etor_E = 0;
  std::int64_t etor_M = 0;
};

/// e^T(M) + e^T(N) - e^T(E); a negative value raises InvariantViolation.
template <class K>
SequenceETor etor_of_sequence(const ShortExactSequence<K>& s, const FiltrationSpec<K>& F,
                              EtorMethod method = EtorMethod::Formula, std::size_t cap = kDefaultDimCap);

/// As above with e^T of the end terms already known.
template <class K>
SequenceETor etor_of_sequence(const ShortExactSequence<K>& s, const FiltrationSpec<K>& F, std::int64_t etor_N,
                              std::int64_t etor_M, EtorMethod method = EtorMethod::Formula,
                              std::size_t cap = kDefaultDimCap);

template <class K>
bool is_tsplit(const ShortExactSequence<K>& s, const FiltrationSpec<K>& F);

/// Checks g P_N in im P_N' modulo m^{level+1}; g is N'.rows x N.rows.
template <class K>
bool map_well_defined(const PolyMatrix<K>& g, const Module<K>& N, const Module<K>& Nprime, long level = 6);

/// Pushout along g : N -> N': E' = coker [[P_N', 0, g], [0, P_E, -inject]].
template <class K>
ShortExactSequence<K> pushout(const ShortExactSequence<K>& s, const PolyMatrix<K>& g, const Module<K>& Nprime);

/// Pullback along h : M' -> M (M.rows x M'.rows), the fibre product as the
/// graded kernel of (n, m') -> (inject n + lift(h m'), m').
template <class K>
ShortExactSequence<K> pullback(const ShortExactSequence<K>& s, const PolyMatrix<K>& h, const Module<K>& Mprime);

/// r alpha: pushout along r I.
template <class K>
ShortExactSequence<K> scalar_mult(const Polynomial<K>& r, const ShortExactSequence<K>& s);

/// Pushout of the direct sum along the codiagonal, then pullback along the diagonal.
template <class K>
ShortExactSequence<K> baer_sum(const ShortExactSequence<K>& s, const ShortExactSequence<K>& t);

/// Replaces E by a graded minimal presentation, carrying the maps along;
/// sequences without a grading are returned unchanged.
template <class K>
ShortExactSequence<K> minimalize_sequence(const ShortExactSequence<K>& s);

/// Least n <= cap with a^n alpha T-split. InputError if a is a unit.
template <class K>
std::optional<long> annihilation_index(const ShortExactSequence<K>& s, const Polynomial<K>& a,
                                       const FiltrationSpec<K>& F, long cap = 8);

template <class K>
struct Cosyzygy {
  Module<K> module;
  ShortExactSequence<K> sequence;
};

/// 0 -> M -> F -> Omega^{-1} M -> 0 from the dual of M: for a factorization
/// (phi | psi) this is coker(psi); otherwise coker(K^T) with K generating
/// ker(P^T). Free summands of M go to F. Needs the Gorenstein flag.
template <class K>
Cosyzygy<K> cosyzygy(const Module<K>& M);

/// Pushout of the cosyzygy sequence of M along f : M -> N (N.rows x M.rows).
template <class K>
ShortExactSequence<K> cone_extension(const Module<K>& M, const Module<K>& N, const PolyMatrix<K>& f);

/// Ext^1_A(M, N) for factorization-backed M and N over a graded
/// hypersurface: homology of Hom(F_., N) on the periodic resolution, degree
/// by degree. Degrees are searched from the lowest possible one until
/// `headroom` empty degrees follow max(gen N) - min(col M) + deg f + s maxw,
/// where m^s lies in the Jacobian ideal; a class outside this window raises
/// InvariantViolation when met.
template <class K>
class ExtGroup {
 public:
  ExtGroup(const Module<K>& M, const Module<K>& N, int headroom = 4);
  ~ExtGroup();
  ExtGroup(ExtGroup&&) noexcept;

  const Module<K>& M() const { return M_; }
  const Module<K>& N() const { return N_; }
  std::size_t dim() const { return degrees_.size(); }
  /// Internal degree of each basis class.
  const std::vector<long>& degrees() const { return degrees_; }
  /// All coordinate vectors over F_p; InputError above `limit` elements.
  std::vector<std::vector<K>> elements(std::size_t limit = 100000) const;

  /// Cocycle F_1 -> F_0(N) (N.rows x cols of P_M) of a class.
  PolyMatrix<K> cocycle(const std::vector<K>& coords) const;
  /// Coordinates of a cocycle; InvariantViolation if it is not one.
  std::vector<K> classify(const PolyMatrix<K>& H) const;
  /// 0 -> N -> E -> M -> 0 with E = coker [[P_N, H], [0, -P_M]]. For
  /// factorizations without free part E keeps a factorization.
  ShortExactSequence<K> extension(const std::vector<K>& coords) const;
  /// Class of a graded sequence with these end terms.
  std::vector<K> class_of(const ShortExactSequence<K>& s) const;

 private:
  struct Piece;
  const Piece& piece(long D) const;
  std::vector<K> classify_in(const PolyMatrix<K>& H, long D) const;

  Module<K> M_;
  Module<K> N_;
  GradedMatrix<K> d1_;
  GradedMatrix<K> d2_;
  GradedMatrix<K> PN_;
  std::unique_ptr<GradedRing<K>> R_;
  std::vector<long> window_;
  std::vector<long> degrees_;
  std::vector<std::pair<long, std::size_t>> index_;
  mutable std::map<long, std::unique_ptr<Piece>> pieces_;
};

template <class K>
ShortExactSequence<K> extension_from_cocycle(const Module<K>& M, const Module<K>& N, const PolyMatrix<K>& H);

}  // namespace mcmlab
