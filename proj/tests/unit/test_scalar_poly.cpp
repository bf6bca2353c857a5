#include <doctest.h>

#include <random>

#include "mcmlab/ring.hpp"

using namespace mcmlab;

namespace {

const std::vector<std::string> xy{"x", "y"};

Polynomial<Fp> P(const std::string& s, std::uint32_t p = 32003) {
  return parse_polynomial<Fp>(s, xy, FieldSpec{p});
}

Polynomial<Fp> random_poly(std::mt19937& rng, std::size_t nvars, unsigned maxdeg, int terms) {
  std::uniform_int_distribution<int> coef(-5, 5), ex(0, static_cast<int>(maxdeg));
  std::vector<Polynomial<Fp>::Term> t;
  for (int k = 0; k < terms; ++k) {
    Monomial m(nvars);
    for (std::size_t i = 0; i < nvars; ++i) m.set(i, ex(rng));
    t.emplace_back(m, Fp(coef(rng), 32003));
  }
  return Polynomial<Fp>::from_terms(t);
}

}  // namespace

TEST_CASE("field arithmetic") {
  Fp a(5, 7), b(3, 7);
  CHECK((a + b).value() == 1);
  CHECK((a - b).value() == 2);
  CHECK((a * b).value() == 1);
  CHECK((a / b * b) == a);
  CHECK((-a).signed_value() == 2);
  CHECK(Fp(4, 7).signed_value() == -3);
  CHECK_THROWS_AS(Fp(0, 7).inverse(), std::domain_error);
  CHECK_NOTHROW(validate_field(FieldSpec{0}));
  CHECK_NOTHROW(validate_field(FieldSpec{32003}));
  CHECK_THROWS_AS(validate_field(FieldSpec{32004}), InputError);
  Rational h(BigRational(1, 2));
  CHECK((h + h).is_one());
  CHECK(h.to_string() == "1/2");
}

TEST_CASE("poly_parse examples") {
  auto p = P("x*y");
  REQUIRE(p.size() == 1);
  CHECK(p.terms()[0].first == Monomial{1, 1});
  CHECK(p.terms()[0].second.is_one());

  auto q = P("x^2 - y^3");
  REQUIRE(q.size() == 2);
  CHECK(q.terms()[0].first.degree() == 2);
  CHECK(q.terms()[1].first.degree() == 3);

  CHECK(P("x^2 + 2*x^2", 3).is_zero());
  CHECK(P("2xy") == P("2*x*y"));
  CHECK(P("x1*x2") == P("x*y"));
  CHECK(P("(x+y)^2") == P("x^2 + 2*x*y + y^2"));
  CHECK(P("1/2*x", 32003) * Polynomial<Fp>::constant(2, Fp(2, 32003)) == P("x"));
}

TEST_CASE("poly_parse errors") {
  CHECK_THROWS_AS(P("x + w"), InputError);
  CHECK_THROWS_AS(P("x +"), InputError);
  CHECK_THROWS_AS(P("x ^"), InputError);
  CHECK_THROWS_AS(P("1/3*x", 3), InputError);
  try {
    P("x + w");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
    CHECK(std::string(e.what()).find("unknown variable 'w'") != std::string::npos);
  }
}

TEST_CASE("print then parse is the identity") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_poly(rng, 2, 4, 5);
    CHECK(P(print_polynomial(p, xy)) == p);
  }
  auto ring = make_ring<Rational>({"x", "y", "z"}, {}, FieldSpec{0});
  auto r = ring->parse("-3/4*x^2*z + 7*y - 1/5");
  CHECK(ring->parse(ring->print(r)) == r);
  CHECK(ring->print(r) == "-3/4*x^2*z + 7*y - 1/5");
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_poly(rng, 3, 3, 4), b = random_poly(rng, 3, 3, 4), c = random_poly(rng, 3, 3, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("lowest_degree") {
  CHECK(P("x*y").lowest_degree() == 2);
  CHECK(P("x^2 - y^3").lowest_degree() == 2);
  CHECK(P("x^5").lowest_degree() == 5);
  CHECK_THROWS_AS(Polynomial<Fp>().lowest_degree(), InputError);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_poly(rng, 2, 4, 3), b = random_poly(rng, 2, 4, 3);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK((a * b).lowest_degree() == a.lowest_degree() + b.lowest_degree());
  }
}

TEST_CASE("exact division") {
  Polynomial<Fp> q;
  CHECK(P("x^2*y - y^3").divide_exact(P("x - y"), q));
  CHECK(q == P("x*y + y^2"));
  CHECK_FALSE(P("x^2 + 1").divide_exact(P("x - y"), q));
}

TEST_CASE("validate_ring") {
  auto a1 = make_ring<Fp>({"x", "y"}, {"x*y"}, FieldSpec{});
  auto d = validate_ring(*a1);
  CHECK(d.dimension == 1);
  CHECK(d.quadric);
  CHECK(a1->weights == std::vector<int>{1, 1});

  auto ci = make_ring<Fp>({"x", "y", "z"}, {"x^2", "y^2"}, FieldSpec{});
  d = validate_ring(*ci);
  CHECK(d.dimension == 1);
  CHECK(d.quadric);

  auto cusp = make_ring<Fp>({"x", "y"}, {"x^2 - y^3"}, FieldSpec{});
  d = validate_ring(*cusp);
  CHECK(d.dimension == 1);
  CHECK(d.quadric);
  CHECK(cusp->weights == std::vector<int>{3, 2});

  CHECK_THROWS_AS(make_ring<Fp>({"x"}, {"x^2"}, FieldSpec{}), InputError);
  CHECK_THROWS_AS(make_ring<Fp>({"x", "y"}, {"x*y + 1"}, FieldSpec{}), InputError);
  auto cubic = make_ring<Fp>({"x", "y"}, {"x^3 + y^3"}, FieldSpec{});
  CHECK_FALSE(validate_ring(*cubic).quadric);
}
