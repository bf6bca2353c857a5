#include "mcmlab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mcmlab/errors.hpp"

namespace mcmlab {

template <class K>
Polynomial<K>::Polynomial(const Monomial& m, const K& c) {
  if (!c.is_zero()) terms_.emplace_back(m, c);
}

template <class K>
Polynomial<K> Polynomial<K>::constant(std::size_t nvars, const K& c) {
  return Polynomial(Monomial(nvars), c);
}

template <class K>
Polynomial<K> Polynomial<K>::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

template <class K>
int Polynomial<K>::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.degree());
}

template <class K>
unsigned Polynomial<K>::lowest_degree() const {
  if (terms_.empty()) throw InputError("lowest degree of the zero polynomial");
  return terms_.front().first.degree();
}

template <class K>
K Polynomial<K>::constant_term() const {
  if (!terms_.empty() && terms_.front().first.is_one()) return terms_.front().second;
  return K{};
}

template <class K>
bool Polynomial<K>::is_homogeneous(std::span<const int> weights) const {
  for (const auto& t : terms_) {
    if (t.first.weighted_degree(weights) != terms_.front().first.weighted_degree(weights)) {
      return false;
    }
  }
  return true;
}

template <class K>
long Polynomial<K>::weighted_degree(std::span<const int> weights) const {
  long d = -1;
  for (const auto& t : terms_) d = std::max(d, t.first.weighted_degree(weights));
  return d;
}

template <class K>
Polynomial<K> Polynomial<K>::component(std::span<const int> weights, long d) const {
  Polynomial p;
  for (const auto& t : terms_) {
    if (t.first.weighted_degree(weights) == d) p.terms_.push_back(t);
  }
  return p;
}

template <class K>
Polynomial<K> Polynomial<K>::truncated(unsigned d) const {
  Polynomial p;
  for (const auto& t : terms_) {
    if (t.first.degree() > d) break;
    p.terms_.push_back(t);
  }
  return p;
}

template <class K>
Polynomial<K> Polynomial<K>::operator+(const Polynomial& o) const {
  Polynomial r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      r.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      r.terms_.push_back(*b++);
    } else {
      K c = a->second + b->second;
      if (!c.is_zero()) r.terms_.emplace_back(a->first, c);
      ++a;
      ++b;
    }
  }
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::operator-(const Polynomial& o) const {
  return *this + (-o);
}

template <class K>
Polynomial<K> Polynomial<K>::operator*(const Polynomial& o) const {
  if (terms_.empty() || o.terms_.empty()) return {};
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) prod.emplace_back(a.first * b.first, a.second * b.second);
  }
  return from_terms(std::move(prod));
}

template <class K>
Polynomial<K> Polynomial<K>::operator*(const K& c) const {
  if (c.is_zero()) return {};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::operator*(const Monomial& m) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.first = t.first * m;
  return r;
}

template <class K>
bool Polynomial<K>::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].first == o.terms_[i].first) || !(terms_[i].second == o.terms_[i].second)) {
      return false;
    }
  }
  return true;
}

template <class K>
Polynomial<K> Polynomial<K>::pow(unsigned e) const {
  Polynomial result;
  std::size_t nv = terms_.empty() ? 0 : terms_.front().first.nvars();
  K one{};
  if (!terms_.empty()) one = terms_.front().second / terms_.front().second;
  result = Polynomial(Monomial(nv), one);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

template <class K>
bool Polynomial<K>::divide_exact(const Polynomial& divisor, Polynomial& quotient) const {
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto& lead = divisor.leading_term();
  Polynomial rem = *this;
  std::vector<Term> q;
  while (!rem.is_zero()) {
    const auto& lt = rem.leading_term();
    if (!lead.first.divides(lt.first)) return false;
    Term t{lt.first / lead.first, lt.second / lead.second};
    rem = rem - divisor * Polynomial(t.first, t.second);
    q.push_back(std::move(t));
  }
  quotient = from_terms(std::move(q));
  return true;
}

std::vector<std::string> default_variable_names(std::size_t nvars) {
  std::vector<std::string> names;
  if (nvars <= 3) {
    const char* xyz[] = {"x", "y", "z"};
    for (std::size_t i = 0; i < nvars; ++i) names.emplace_back(xyz[i]);
  } else {
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  return names;
}

namespace {

template <class K>
class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names, const FieldSpec& field)
      : text_(text), field_(field), nvars_(names.size()) {
    for (std::size_t i = 0; i < names.size(); ++i) aliases_.emplace_back(names[i], i);
    for (std::size_t i = 0; i < names.size(); ++i) {
      std::string alias = "x" + std::to_string(i + 1);
      if (std::find(names.begin(), names.end(), alias) == names.end()) {
        aliases_.emplace_back(alias, i);
      }
    }
    std::sort(aliases_.begin(), aliases_.end(),
              [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  }

  Polynomial<K> parse() {
    Polynomial<K> p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial syntax error at position " + std::to_string(pos_) + ": " + what +
                     " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Polynomial<K> expr() {
    skip_ws();
    bool neg = false;
    if (peek('+') || peek('-')) neg = text_[pos_++] == '-';
    Polynomial<K> acc = term();
    if (neg) acc = -acc;
    while (peek('+') || peek('-')) {
      bool minus = text_[pos_++] == '-';
      Polynomial<K> t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || std::isalpha(static_cast<unsigned char>(c));
  }

  Polynomial<K> term() {
    if (!starts_factor()) fail("expected a term");
    Polynomial<K> acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        if (!starts_factor()) fail("expected a factor after '*'");
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  unsigned exponent() {
    if (!peek('^')) return 1;
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an exponent after '^'");
    return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }

  BigInt integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial<K> factor() {
    skip_ws();
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt num = integer(), den = 1;
      if (peek('/')) {
        ++pos_;
        den = integer();
      }
      K coeff = Scalars<K>::from_fraction(field_, num, den);
      Polynomial<K> base = Polynomial<K>::constant(nvars_, coeff);
      unsigned e = exponent();
      return e == 1 ? base : base.pow(e);
    }
    if (c == '(') {
      ++pos_;
      Polynomial<K> inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner.pow(exponent());
    }
    for (const auto& [name, index] : aliases_) {
      if (text_.substr(pos_, name.size()) == name) {
        pos_ += name.size();
        unsigned e = exponent();
        return Polynomial<K>(Monomial::variable(nvars_, index, e), Scalars<K>::from_int(field_, 1));
      }
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    pos_ = start;
    std::size_t end = start;
    while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
    fail("unknown variable '" + std::string(text_.substr(start, end - start)) + "'");
  }

  std::string_view text_;
  FieldSpec field_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, std::size_t>> aliases_;
};

}  // namespace

template <class K>
Polynomial<K> parse_polynomial(std::string_view text, std::span<const std::string> var_names,
                               const FieldSpec& field) {
  return Parser<K>(text, var_names, field).parse();
}

template <class K>
std::string print_polynomial(const Polynomial<K>& p, std::span<const std::string> var_names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    bool neg = Scalars<K>::is_negative(c);
    K mag = neg ? -c : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string vars;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += var_names[i];
      if (m[i] > 1) vars += "^" + std::to_string(m[i]);
    }
    if (vars.empty()) {
      os << Scalars<K>::print(mag);
    } else if (mag.is_one()) {
      os << vars;
    } else {
      os << Scalars<K>::print(mag) << "*" << vars;
    }
  }
  return os.str();
}

template class Polynomial<Fp>;
template class Polynomial<Rational>;
template Polynomial<Fp> parse_polynomial<Fp>(std::string_view, std::span<const std::string>,
                                             const FieldSpec&);
template Polynomial<Rational> parse_polynomial<Rational>(std::string_view,
                                                         std::span<const std::string>,
                                                         const FieldSpec&);
template std::string print_polynomial<Fp>(const Polynomial<Fp>&, std::span<const std::string>);
template std::string print_polynomial<Rational>(const Polynomial<Rational>&,
                                                std::span<const std::string>);

}  // namespace mcmlab
