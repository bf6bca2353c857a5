#include "mcmlab/monomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "mcmlab/errors.hpp"

namespace mcmlab {

Monomial::Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(nvars)) {
  if (nvars > kMaxVars) throw InputError("at most 8 variables are supported");
}

Monomial::Monomial(std::initializer_list<unsigned> exps) : Monomial(exps.size()) {
  std::size_t i = 0;
  for (unsigned e : exps) e_[i++] = static_cast<std::uint16_t>(e);
}

Monomial Monomial::from(std::span<const unsigned> exps) {
  Monomial m(exps.size());
  for (std::size_t i = 0; i < exps.size(); ++i) m.e_[i] = static_cast<std::uint16_t>(exps[i]);
  return m;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, unsigned power) {
  Monomial m(nvars);
  m.e_[index] = static_cast<std::uint16_t>(power);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (std::size_t i = 0; i < n_; ++i) d += e_[i];
  return d;
}

long Monomial::weighted_degree(std::span<const int> weights) const {
  long d = 0;
  for (std::size_t i = 0; i < n_; ++i) d += long(weights[i]) * e_[i];
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  if (n_ == 0) r.n_ = o.n_;
  for (std::size_t i = 0; i < r.n_; ++i) r.e_[i] = static_cast<std::uint16_t>(e_[i] + o.e_[i]);
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < n_; ++i) r.e_[i] = static_cast<std::uint16_t>(e_[i] - o.e_[i]);
  return r;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  const unsigned da = degree(), db = o.degree();
  if (da != db) return da <=> db;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e_[i] != o.e_[i]) return e_[i] <=> o.e_[i];
  }
  return std::strong_ordering::equal;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    h ^= e_[i];
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void fill_degree(std::size_t nvars, std::size_t var, unsigned remaining, Monomial& cur,
                 std::vector<Monomial>& out) {
  if (var + 1 == nvars) {
    cur.set(var, remaining);
    out.push_back(cur);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    cur.set(var, e);
    fill_degree(nvars, var + 1, remaining - e, cur, out);
  }
  cur.set(var, 0);
}

void fill_weighted(std::span<const int> w, std::size_t var, long remaining, Monomial& cur,
                   std::vector<Monomial>& out) {
  if (var == w.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (long e = remaining / w[var]; e >= 0; --e) {
    cur.set(var, static_cast<unsigned>(e));
    fill_weighted(w, var + 1, remaining - e * w[var], cur, out);
  }
  cur.set(var, 0);
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  Monomial cur(nvars);
  if (nvars == 0) {
    if (d == 0) out.push_back(cur);
    return out;
  }
  fill_degree(nvars, 0, d, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  for (unsigned k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(nvars, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Monomial> monomials_of_weighted_degree(std::span<const int> weights, long d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  Monomial cur(weights.size());
  fill_weighted(weights, 0, d, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mcmlab
