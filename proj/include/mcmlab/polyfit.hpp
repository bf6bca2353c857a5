#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mcmlab/field.hpp"

namespace mcmlab {

/// Exact polynomial agreeing with an integer table from some index on.
struct PolyFit {
  int degree = -1;
  /// Power-basis coefficients c_0 + c_1 n + ... (empty for the zero polynomial).
  std::vector<BigRational> coefficients;
  long stabilization_index = 0;
  long window_lo = 0;
  long window_hi = 0;

  BigRational eval(long n) const;
  BigRational leading() const;
  std::string to_string() const;
};

/// Fits values[k] = table at n = k. The degree is the least r whose
/// (r+1)-st forward difference vanishes on the last three available entries,
/// all of which must lie in [window_lo, end]. Throws WindowTooShort otherwise.
PolyFit fit_table(const std::vector<std::int64_t>& values, long window_lo = 0);

/// Re-expands P(n) = sum (-1)^i e_i binom(n+d-i, d-i) and returns e_0..e_d.
/// Throws InvariantViolation if the fit degree exceeds d or an e_i is not
/// an integer.
std::vector<BigInt> binomial_coefficients(const PolyFit& fit, int d);

/// Grows the table until fit_table succeeds: upper end 2d+8 first, then
/// doubled, never beyond max_n. compute(hi) returns entries for n = 0..hi.
PolyFit fit_auto(const std::function<std::vector<std::int64_t>(long)>& compute, int d,
                 long max_n = 64, std::vector<std::int64_t>* values_out = nullptr);

/// The value that the last three entries share, for eventually constant tables.
PolyFit fit_constant(const std::vector<std::int64_t>& values, long window_lo = 0);

BigInt factorial(int n);

}  // namespace mcmlab
