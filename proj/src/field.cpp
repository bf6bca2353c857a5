#include "mcmlab/field.hpp"

#include <sstream>

namespace mcmlab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void validate_field(const FieldSpec& field) {
  if (field.characteristic == 0) return;
  if (field.characteristic >= (1u << 31) || !is_prime(field.characteristic)) {
    throw InputError("field characteristic must be 0 or a prime below 2^31, got " +
                     std::to_string(field.characteristic));
  }
}

Fp::Fp(std::int64_t value, std::uint32_t modulus) : p_(modulus) {
  if (modulus == 0) throw InputError("Fp needs a nonzero modulus");
  std::int64_t r = value % static_cast<std::int64_t>(modulus);
  if (r < 0) r += modulus;
  v_ = static_cast<std::uint32_t>(r);
}

Fp Fp::operator+(const Fp& o) const {
  Fp r;
  r.p_ = join(p_, o.p_);
  std::uint64_t s = std::uint64_t(v_) + o.v_;
  if (r.p_ != 0 && s >= r.p_) s -= r.p_;
  r.v_ = static_cast<std::uint32_t>(s);
  return r;
}

Fp Fp::operator-(const Fp& o) const {
  Fp r;
  r.p_ = join(p_, o.p_);
  std::int64_t s = std::int64_t(v_) - o.v_;
  if (s < 0) s += r.p_;
  r.v_ = static_cast<std::uint32_t>(s);
  return r;
}

Fp Fp::operator*(const Fp& o) const {
  Fp r;
  r.p_ = join(p_, o.p_);
  if (r.p_ == 0) return r;
  r.v_ = static_cast<std::uint32_t>((std::uint64_t(v_) * o.v_) % r.p_);
  return r;
}

Fp Fp::operator-() const {
  Fp r = *this;
  if (v_ != 0) r.v_ = p_ - v_;
  return r;
}

Fp Fp::inverse() const {
  if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
  std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
  while (m != 0) {
    std::int64_t q = a / m;
    std::int64_t t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return Fp(x0, p_);
}

std::int64_t Fp::signed_value() const {
  if (p_ != 0 && v_ > p_ / 2) return std::int64_t(v_) - p_;
  return v_;
}

std::string Fp::to_string() const { return std::to_string(signed_value()); }

Rational Rational::operator/(const Rational& o) const {
  if (o.v_ == 0) throw std::domain_error("division by zero in Q");
  return Rational(BigRational(v_ / o.v_));
}

Rational Rational::inverse() const {
  if (v_ == 0) throw std::domain_error("inverse of zero in Q");
  return Rational(BigRational(1 / v_));
}

std::string to_string(const BigRational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

std::string Rational::to_string() const { return mcmlab::to_string(v_); }

Fp Scalars<Fp>::from_fraction(const FieldSpec& f, const BigInt& num, const BigInt& den) {
  const BigInt p = f.characteristic;
  BigInt n = num % p, d = den % p;
  if (n < 0) n += p;
  if (d < 0) d += p;
  if (d == 0) {
    throw InputError("coefficient denominator " + den.str() + " is not invertible mod " +
                     std::to_string(f.characteristic));
  }
  return Fp(n.convert_to<std::int64_t>(), f.characteristic) /
         Fp(d.convert_to<std::int64_t>(), f.characteristic);
}

Rational Scalars<Rational>::from_fraction(const FieldSpec&, const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("zero denominator in coefficient");
  return Rational(BigRational(num, den));
}

}  // namespace mcmlab
