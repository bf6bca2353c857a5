#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcmlab/field.hpp"
#include "mcmlab/monomial.hpp"

namespace mcmlab {

/// Sparse multivariate polynomial. Terms are kept sorted ascending in
/// degree-lex order with no zero coefficients, so equality is structural.
template <class K>
class Polynomial {
 public:
  using Term = std::pair<Monomial, K>;

  Polynomial() = default;
  Polynomial(const Monomial& m, const K& c);
  static Polynomial constant(std::size_t nvars, const K& c);
  /// Takes arbitrary terms; sorts, merges and drops zeros.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Smallest total degree of a term; throws InputError on zero.
  unsigned lowest_degree() const;
  /// Coefficient of the monomial 1.
  K constant_term() const;
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  /// True when nonzero with nonzero constant term; a unit of the local ring.
  bool is_local_unit() const { return !terms_.empty() && terms_[0].first.is_one(); }
  const Term& leading_term() const { return terms_.back(); }

  /// Homogeneous for the weights (zero counts as homogeneous).
  bool is_homogeneous(std::span<const int> weights) const;
  long weighted_degree(std::span<const int> weights) const;
  /// Sum of terms of weighted degree exactly d.
  Polynomial component(std::span<const int> weights, long d) const;
  /// Drops terms of total degree > d.
  Polynomial truncated(unsigned d) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const K& c) const;
  Polynomial operator*(const Monomial& m) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  bool operator==(const Polynomial& o) const;

  Polynomial pow(unsigned e) const;
  /// Exact division; returns false if the divisor does not divide.
  bool divide_exact(const Polynomial& divisor, Polynomial& quotient) const;

 private:
  std::vector<Term> terms_;
};

/// Variable names: x,y,z for up to three variables, x1..xv beyond.
std::vector<std::string> default_variable_names(std::size_t nvars);

/// Parses "3*x^2*y - 1/2*z + 4". Variables may be separated by '*' or
/// juxtaposed; x1..xv are accepted as aliases of the default names.
template <class K>
Polynomial<K> parse_polynomial(std::string_view text, std::span<const std::string> var_names,
                               const FieldSpec& field);

/// Canonical rendering: terms in descending degree-lex order.
template <class K>
std::string print_polynomial(const Polynomial<K>& p, std::span<const std::string> var_names);

}  // namespace mcmlab
