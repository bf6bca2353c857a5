#include "mcmlab/polyfit.hpp"

#include <sstream>

#include "mcmlab/errors.hpp"

namespace mcmlab {

namespace {

using Poly = std::vector<BigRational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul_linear(const Poly& p, const BigRational& a) {
  // p(n) * (n - a)
  Poly out(p.size() + 1, BigRational(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] += p[i];
    out[i] -= p[i] * a;
  }
  return out;
}

// binom(n - b, k) as a polynomial in n.
Poly falling_binomial(long b, int k) {
  Poly p{BigRational(1)};
  for (int i = 0; i < k; ++i) p = mul_linear(p, BigRational(b + i));
  BigRational f(factorial(k));
  for (auto& c : p) c /= f;
  return p;
}

void add_into(Poly& acc, const Poly& p, const BigRational& s) {
  if (acc.size() < p.size()) acc.resize(p.size(), BigRational(0));
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += p[i] * s;
}

}  // namespace

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigRational PolyFit::eval(long n) const {
  BigRational v = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * n + *it;
  return v;
}

BigRational PolyFit::leading() const {
  return coefficients.empty() ? BigRational(0) : coefficients.back();
}

std::string PolyFit::to_string() const {
  if (coefficients.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(coefficients.size()) - 1; i >= 0; --i) {
    const auto& c = coefficients[i];
    if (c == 0) continue;
    BigRational mag = c < 0 ? BigRational(-c) : c;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    if (i == 0 || mag != 1) os << mcmlab::to_string(mag);
    if (i > 0) os << (mag != 1 ? "*n" : "n");
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

PolyFit fit_table(const std::vector<std::int64_t>& values, long window_lo) {
  const long N = static_cast<long>(values.size());
  std::vector<std::vector<BigInt>> diffs{std::vector<BigInt>(values.begin(), values.end())};
  for (int r = 0; r + 4 <= N; ++r) {
    const auto& prev = diffs.back();
    std::vector<BigInt> next(prev.size() - 1);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) next[i] = prev[i + 1] - prev[i];
    diffs.push_back(next);
    // diffs[r+1][k] uses entries k..k+r+1; its last three start at N-r-4.
    const long first_used = N - r - 4;
    if (first_used < window_lo) break;
    bool vanish = true;
    for (long k = N - r - 4; k <= N - r - 2; ++k) vanish = vanish && next[k] == 0;
    if (!vanish) continue;

    PolyFit fit;
    fit.degree = r;
    fit.window_lo = window_lo;
    fit.window_hi = N - 1;
    const long base = N - 1 - r;
    Poly p;
    for (int k = 0; k <= r; ++k) add_into(p, falling_binomial(base, k), BigRational(diffs[k][base]));
    trim(p);
    fit.coefficients = p;
    fit.degree = p.empty() ? -1 : static_cast<int>(p.size()) - 1;
    long s = 0;
    for (long n = N - 1; n >= 0; --n) {
      if (fit.eval(n) != BigRational(values[n])) {
        s = n + 1;
        break;
      }
    }
    fit.stabilization_index = s;
    return fit;
  }
  throw WindowTooShort("finite differences do not vanish on three consecutive entries of a table of length " +
                       std::to_string(N) + " starting the window at " + std::to_string(window_lo));
}

PolyFit fit_constant(const std::vector<std::int64_t>& values, long window_lo) {
  const long N = static_cast<long>(values.size());
  if (N < 3 || N - 3 < window_lo || values[N - 1] != values[N - 2] || values[N - 2] != values[N - 3]) {
    throw WindowTooShort("table is not constant on its last three entries");
  }
  PolyFit fit;
  fit.window_lo = window_lo;
  fit.window_hi = N - 1;
  if (values.back() != 0) fit.coefficients.push_back(BigRational(values.back()));
  fit.degree = fit.coefficients.empty() ? -1 : 0;
  long s = N - 1;
  while (s > 0 && values[s - 1] == values.back()) --s;
  fit.stabilization_index = s;
  return fit;
}

std::vector<BigInt> binomial_coefficients(const PolyFit& fit, int d) {
  if (fit.degree > d) {
    throw InvariantViolation("fitted degree " + std::to_string(fit.degree) +
                             " exceeds the dimension " + std::to_string(d));
  }
  Poly rest = fit.coefficients;
  rest.resize(d + 1, BigRational(0));
  std::vector<BigInt> e;
  for (int i = 0; i <= d; ++i) {
    const int k = d - i;
    BigRational c = rest[k] * BigRational(factorial(k));
    if (denominator(c) != 1) {
      throw InvariantViolation("non-integral Hilbert coefficient e_" + std::to_string(i) + " = " +
                               mcmlab::to_string(c));
    }
    // binom(n + k, k) = falling_binomial(-k, k)
    add_into(rest, falling_binomial(-k, k), -c);
    e.push_back(i % 2 == 0 ? BigInt(numerator(c)) : BigInt(-numerator(c)));
  }
  return e;
}

PolyFit fit_auto(const std::function<std::vector<std::int64_t>(long)>& compute, int d, long max_n,
                 std::vector<std::int64_t>* values_out) {
  const long lo = d + 2;
  long hi = 2L * d + 8;
  while (true) {
    hi = std::min(hi, max_n);
    auto values = compute(hi);
    try {
      auto fit = fit_table(values, lo);
      if (values_out) *values_out = values;
      return fit;
    } catch (const WindowTooShort&) {
      if (hi >= max_n) {
        throw WindowTooShort("no polynomial tail up to n = " + std::to_string(max_n) +
                             "; enlarge the window");
      }
    }
    hi *= 2;
  }
}

}  // namespace mcmlab
