#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mcmlab {

inline constexpr std::size_t kMaxVars = 8;

/// Exponent vector with inline storage. Ordered degree-lexicographically:
/// total degree first, then the exponent of x1, then x2, and so on.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<unsigned> exps);
  static Monomial from(std::span<const unsigned> exps);
  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1);

  std::size_t nvars() const { return n_; }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, unsigned v) { e_[i] = static_cast<std::uint16_t>(v); }
  unsigned degree() const;
  /// Sum of weight_i * exponent_i.
  long weighted_degree(std::span<const int> weights) const;
  bool is_one() const { return degree() == 0; }
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& o) const;
  /// Requires divides(); componentwise difference.
  Monomial operator/(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  std::strong_ordering operator<=>(const Monomial& o) const;
  std::size_t hash() const;

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// All monomials in nvars variables of total degree exactly d, ascending.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d);
/// All monomials of total degree <= d, ascending (degree-lex).
std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned d);
/// All monomials of weighted degree exactly d for positive weights, ascending.
std::vector<Monomial> monomials_of_weighted_degree(std::span<const int> weights, long d);

}  // namespace mcmlab
