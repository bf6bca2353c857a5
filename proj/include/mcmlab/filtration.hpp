#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mcmlab/modules.hpp"
#include "mcmlab/polyfit.hpp"
#include "mcmlab/truncate.hpp"

namespace mcmlab {

using Exponent = std::vector<long>;

/// Newton polyhedron conv(gens) + R_{>=0}^v of a monomial ideal, kept as
/// the inequalities w.a >= c with w >= 0 that cut it out.
class NewtonPolyhedron {
 public:
  NewtonPolyhedron(std::vector<Exponent> gens, std::size_t nvars);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Exponent>& generators() const { return gens_; }
  const std::vector<std::pair<std::vector<long>, long>>& inequalities() const { return ineq_; }
  /// a in n * NP, i.e. x^a in the integral closure of I^n.
  bool contains(const Exponent& a, long n) const;
  /// Minimal monomial generators of the integral closure of I^n, sorted.
  std::vector<Exponent> closure_generators(long n) const;

 private:
  std::vector<Exponent> gens_;
  std::size_t nvars_;
  std::vector<std::pair<std::vector<long>, long>> ineq_;
};

/// Exponents of monomial generators; InputError if some generator is not a monomial.
template <class K>
std::vector<Exponent> monomial_exponents(const std::vector<Polynomial<K>>& gens);

/// Minimal elements of a set of exponents under divisibility, sorted.
std::vector<Exponent> minimal_exponents(std::vector<Exponent> e);

struct IntClosumReport {
  bool equal = false;
  /// Minimal generators of the closure of J^n with J = (I, X); X is the last coordinate.
  std::vector<Exponent> lhs;
  /// Minimal generators of sum_i closure(I^{n-i}) X^i.
  std::vector<Exponent> rhs;
};

/// Compares both sides for a monomial ideal I given by exponents in v variables.
IntClosumReport check_intclosum(const std::vector<Exponent>& I, std::size_t nvars, long n);

enum class FiltrationKind { Adic, IntegralClosure, Custom };

/// adic: F_n = I^n. IntegralClosure: F_n = closure of I^n (monomial I).
/// Custom: F_n = table[n] up to n0 = table.size() - 1, then F_n = I F_{n-1}.
template <class K>
struct FiltrationSpec {
  FiltrationKind kind = FiltrationKind::Adic;
  std::vector<Polynomial<K>> ideal;
  std::vector<std::vector<Polynomial<K>>> table;

  static FiltrationSpec m_adic(const RingSpec<K>& ring);
  bool is_m_adic() const;
  std::string describe(const RingSpec<K>& ring) const;
};

template <class K>
std::vector<Polynomial<K>> filtration_gens(const RingSpec<K>& ring, const FiltrationSpec<K>& F, long n);

/// values[n] = length of M / F_{n+1} M for n = 0..hi; the window is [lo, hi].
struct HilbertTable {
  long window_lo = 0;
  long window_hi = 0;
  std::vector<std::int64_t> values;
};

template <class K>
HilbertTable hilbert_table(const Module<K>& M, const FiltrationSpec<K>& F, long lo, long hi,
                           std::size_t cap = kDefaultDimCap);

/// Calls fn(n, T) with T = A/F_{n+1} for n = 0..hi, in parallel over n.
template <class K>
void for_each_quotient(RingPtr<K> ring, const FiltrationSpec<K>& F, long hi, std::size_t cap,
                       const std::function<void(long, const TruncatedAlgebra<K>&)>& fn);

PolyFit fit_hilbert(const HilbertTable& table);

struct HilbertReport {
  HilbertTable table;
  PolyFit fit;
  /// e_0 .. e_d with d = dim A.
  std::vector<BigInt> e;
};

/// Grows the window as fit_auto does and re-expands in the binomial basis.
template <class K>
HilbertReport hilbert_coefficients(const Module<K>& M, const FiltrationSpec<K>& F, long max_n = 64,
                                   std::size_t cap = kDefaultDimCap);

struct UlrichReport {
  bool ulrich = false;
  std::size_t mu = 0;
  BigInt e0;
  BigInt e1;
};

/// mu(M) = e_0(M) for the m-adic filtration; also reports e_1(M).
template <class K>
UlrichReport is_ulrich(const Module<K>& M);

struct AxiomResult {
  std::string name;
  bool ok = true;
  std::string witness;
};

struct AdmissibilityReport {
  std::vector<AxiomResult> axioms;
  /// Least n0 with F_n = I F_{n-1} for n0 < n <= level, if any.
  std::optional<long> stable_from;
  std::string note;
  bool ok() const;
};

/// Membership checks of I^n in F_n, F_{n+1} in F_n, F_n F_m in F_{n+m}
/// and the tail rule, for indices up to level, in exact quotients A/F_n.
template <class K>
AdmissibilityReport check_admissible(RingPtr<K> ring, const FiltrationSpec<K>& F, long level,
                                     std::size_t cap = kDefaultDimCap);

struct SuperficialReport {
  bool ok = true;
  std::optional<long> failing_n;
  std::string witness;
  long window_lo = 0;
  long window_hi = 0;
  long c = 1;
  std::string note;
};

/// Checks (F_{n+1}M :_M x) intersected with F_c M equals F_n M for n in
/// [lo, hi], inside M / F_{n+1} M. InputError unless x lies in F_1 \ F_2.
template <class K>
SuperficialReport superficial_check(const Polynomial<K>& x, const Module<K>& M, const FiltrationSpec<K>& F,
                                    long lo, long hi, long c = 1, std::size_t cap = kDefaultDimCap);

}  // namespace mcmlab
