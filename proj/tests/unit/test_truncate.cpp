#include <doctest.h>

#include <algorithm>
#include <random>

#include "mcmlab/truncate.hpp"

using namespace mcmlab;

namespace {

RingPtr<Fp> a1() { return make_ring<Fp>({"x", "y"}, {"x*y"}, FieldSpec{}); }

// Independent count for monomial quotients: monomials of degree <= n not
// divisible by any generator.
std::size_t standard_monomials(std::size_t nvars, const std::vector<Monomial>& gens, unsigned n) {
  std::size_t count = 0;
  for (const auto& m : monomials_up_to(nvars, n)) {
    bool divisible = false;
    for (const auto& g : gens) divisible = divisible || g.divides(m);
    if (!divisible) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("build_truncation examples") {
  auto T = build_truncation<Fp>(a1(), {}, 3);
  CHECK(T.dim() == 7);
  std::vector<Monomial> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}, {3, 0}, {0, 3}};
  auto basis = T.basis();
  std::sort(expected.begin(), expected.end());
  CHECK(basis == expected);
  CHECK(std::is_sorted(basis.begin(), basis.end()));

  auto line = make_ring<Fp>({"x", "y"}, {"y"}, FieldSpec{});
  auto T2 = build_truncation<Fp>(line, {line->parse("x^2")}, 5);
  CHECK(T2.dim() == 2);

  auto r = a1();
  CHECK(build_truncation<Fp>(r, {r->var(0), r->var(1)}, 4).dim() == 1);
}

TEST_CASE("m-adic dimension on the node is 2n+1 and matches the monomial count") {
  auto T = build_truncation<Fp>(a1(), {}, 30);
  for (unsigned n = 0; n <= 30; ++n) {
    auto Tn = T.restrict(n);
    CHECK(Tn.dim() == 2 * n + 1);
    CHECK(Tn.dim() == standard_monomials(2, {Monomial{1, 1}}, n));
  }
}

TEST_CASE("restriction agrees with a fresh build") {
  auto ring = make_ring<Fp>({"x", "y", "z"}, {"x^2 - y*z", "y^2 + x*z"}, FieldSpec{});
  auto big = build_truncation<Fp>(ring, {}, 7);
  std::size_t prev = 0;
  for (unsigned n = 0; n <= 7; ++n) {
    auto fresh = build_truncation<Fp>(ring, {}, n);
    auto cut = big.restrict(n);
    CHECK(cut.dim() == fresh.dim());
    CHECK(cut.basis() == fresh.basis());
    auto p = ring->parse("x^3 + x*y*z - 2*y^2 + z^4 + x");
    CHECK(cut.reduce(p) == fresh.reduce(p));
    CHECK(fresh.dim() >= prev);
    prev = fresh.dim();
  }
}

TEST_CASE("reducer is idempotent, fixes basis monomials and is linear") {
  auto ring = a1();
  auto T = build_truncation<Fp>(ring, {ring->parse("x^3 + y^2")}, 6);
  for (const auto& b : T.basis()) {
    CHECK(T.reduce(Polynomial<Fp>(b, ring->scalar(1))) == Polynomial<Fp>(b, ring->scalar(1)));
  }
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial<Fp> p, q;
    for (const auto& m : monomials_up_to(2, 6)) {
      p += Polynomial<Fp>(m, ring->scalar(coef(rng)));
      q += Polynomial<Fp>(m, ring->scalar(coef(rng)));
    }
    CHECK(T.reduce(T.reduce(p)) == T.reduce(p));
    CHECK(T.reduce(p + q) == T.reduce(p) + T.reduce(q));
  }
}

TEST_CASE("mult_map and rank") {
  auto ring = a1();
  auto T = build_truncation<Fp>(ring, {}, 2);
  auto X = mult_map(ring->var(0), T);
  REQUIRE(X.columns.size() == 5);
  auto basis = T.basis();
  auto image = [&](const char* b) {
    auto m = ring->parse(b).terms()[0].first;
    auto pos = std::find(basis.begin(), basis.end(), m) - basis.begin();
    return T.from_coords(X.columns[pos]);
  };
  CHECK(image("1") == ring->parse("x"));
  CHECK(image("x") == ring->parse("x^2"));
  CHECK(image("x^2").is_zero());
  CHECK(image("y").is_zero());
  CHECK(image("y^2").is_zero());
  CHECK(X.rank() == 2);
  CHECK(X.kernel_dim() == 3);

  auto one = mult_map(ring->constant(1), build_truncation<Fp>(ring, {}, 3));
  CHECK(one.rank() == 7);
  CHECK(mult_map(Polynomial<Fp>(), T).rank() == 0);
}

TEST_CASE("certified power detects m-primary quotients") {
  auto ring = a1();
  auto T = build_certified<Fp>(ring, {ring->parse("x^2"), ring->parse("y^3")}, 2);
  REQUIRE(T.certified_power());
  CHECK(T.dim() == standard_monomials(2, {Monomial{1, 1}, Monomial{2, 0}, Monomial{0, 3}}, 10));
  CHECK_THROWS_AS(build_certified<Fp>(ring, {ring->parse("x^2")}, 2, 1000), CapExceeded);
}

TEST_CASE("dimension cap") {
  auto ring = make_ring<Fp>({"x", "y", "z"}, {"x*y"}, FieldSpec{});
  CHECK_THROWS_AS(build_truncation<Fp>(ring, {}, 40, 100), CapExceeded);
}
