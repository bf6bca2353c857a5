#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcmlab/errors.hpp"

namespace mcmlab {

/// Coefficient field: characteristic 0 means the rationals, otherwise F_p.
struct FieldSpec {
  std::uint32_t characteristic = 32003;

  bool is_prime_field() const { return characteristic != 0; }
  bool operator==(const FieldSpec&) const = default;
};

bool is_prime(std::uint64_t n);

/// Throws InputError unless the characteristic is 0 or a prime below 2^31.
void validate_field(const FieldSpec& field);

/// Element of F_p. The modulus travels with the value so that containers of
/// coefficients never need a side channel; a default-constructed element is
/// a "universal zero" that adopts the modulus of whatever it meets.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::uint32_t modulus);

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator/(const Fp& o) const { return *this * o.inverse(); }
  Fp operator-() const;
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  bool operator==(const Fp& o) const { return v_ == o.v_; }

  Fp inverse() const;
  /// Symmetric representative in (-p/2, p/2].
  std::int64_t signed_value() const;
  std::string to_string() const;

 private:
  static std::uint32_t join(std::uint32_t a, std::uint32_t b) { return a != 0 ? a : b; }
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Element of Q.
class Rational {
 public:
  Rational() = default;
  explicit Rational(std::int64_t v) : v_(v) {}
  explicit Rational(BigRational v) : v_(std::move(v)) {}

  const BigRational& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Rational operator+(const Rational& o) const { return Rational(BigRational(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(BigRational(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(BigRational(v_ * o.v_)); }
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(BigRational(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  bool operator==(const Rational& o) const { return v_ == o.v_; }

  Rational inverse() const;
  bool is_negative() const { return v_ < 0; }
  std::string to_string() const;

 private:
  BigRational v_ = 0;
};

/// Builds field constants for a coefficient type.
template <class K>
struct Scalars;

template <>
struct Scalars<Fp> {
  static Fp from_int(const FieldSpec& f, std::int64_t v) { return Fp(v, f.characteristic); }
  /// Division of integers inside the field; throws if the denominator vanishes.
  static Fp from_fraction(const FieldSpec& f, const BigInt& num, const BigInt& den);
  static bool matches(const FieldSpec& f) { return f.characteristic != 0; }
  static std::string print(const Fp& c) { return std::to_string(c.signed_value()); }
  static bool is_negative(const Fp& c) { return c.signed_value() < 0; }
};

template <>
struct Scalars<Rational> {
  static Rational from_int(const FieldSpec&, std::int64_t v) { return Rational(v); }
  static Rational from_fraction(const FieldSpec& f, const BigInt& num, const BigInt& den);
  static bool matches(const FieldSpec& f) { return f.characteristic == 0; }
  static std::string print(const Rational& c) { return c.to_string(); }
  static bool is_negative(const Rational& c) { return c.is_negative(); }
};

std::string to_string(const BigRational& q);

}  // namespace mcmlab
