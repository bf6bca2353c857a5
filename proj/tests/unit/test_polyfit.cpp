#include <doctest.h>

#include "mcmlab/errors.hpp"
#include "mcmlab/polyfit.hpp"

using namespace mcmlab;

namespace {

std::vector<std::int64_t> table(long hi, std::int64_t (*f)(long)) {
  std::vector<std::int64_t> v;
  for (long n = 0; n <= hi; ++n) v.push_back(f(n));
  return v;
}

}  // namespace

TEST_CASE("odd numbers fit 2n+1") {
  auto fit = fit_table(table(12, [](long n) -> std::int64_t { return 2 * n + 1; }), 3);
  CHECK(fit.degree == 1);
  CHECK(fit.leading() == 2);
  CHECK(fit.eval(100) == 201);
  CHECK(fit.stabilization_index == 0);
  CHECK(fit.to_string() == "2*n + 1");
}

TEST_CASE("eventual polynomial records where it starts") {
  auto fit = fit_table({5, 0, 7, 9, 11, 13, 15, 17, 19, 21}, 2);
  CHECK(fit.degree == 1);
  CHECK(fit.stabilization_index == 2);
}

TEST_CASE("constant and zero tables") {
  auto fit = fit_table({1, 3, 3, 3, 3, 3, 3, 3}, 0);
  CHECK(fit.degree == 0);
  CHECK(fit.leading() == 3);
  CHECK(fit.stabilization_index == 1);

  auto c = fit_constant({4, 2, 2, 2});
  CHECK(c.degree == 0);
  CHECK(c.stabilization_index == 1);
  CHECK(fit_constant({1, 0, 0, 0}).degree == -1);
  CHECK_THROWS_AS(fit_constant({1, 2, 2}), WindowTooShort);
}

TEST_CASE("binomial re-expansion") {
  // 2(n+1) - 1 = 2n + 1 in dimension one
  auto fit = fit_table(table(12, [](long n) -> std::int64_t { return 2 * n + 1; }));
  auto e = binomial_coefficients(fit, 1);
  REQUIRE(e.size() == 2);
  CHECK(e[0] == 2);
  CHECK(e[1] == 1);

  // 4 binom(n+2,2) - 3 (n+1) + 5 in dimension two
  auto sq = fit_table(table(14, [](long n) -> std::int64_t {
    return 4 * (n + 2) * (n + 1) / 2 - 3 * (n + 1) + 5;
  }));
  CHECK(sq.leading() == 2);
  auto e2 = binomial_coefficients(sq, 2);
  CHECK(e2 == std::vector<BigInt>{4, 3, 5});

  CHECK_THROWS_AS(binomial_coefficients(sq, 1), InvariantViolation);
}

TEST_CASE("short windows are reported") {
  CHECK_THROWS_AS(fit_table({1, 2, 4, 8, 16, 32, 64}, 0), WindowTooShort);
  CHECK_THROWS_AS(fit_table({1, 3, 5, 7, 9}, 3), WindowTooShort);
  int calls = 0;
  auto fit = fit_auto(
      [&](long hi) {
        ++calls;
        std::vector<std::int64_t> v;
        for (long n = 0; n <= hi; ++n) v.push_back(n < 9 ? n * n : 3 * n);
        return v;
      },
      1);
  CHECK(calls == 2);
  CHECK(fit.leading() == 3);
  CHECK(fit.stabilization_index == 9);
  CHECK_THROWS_AS(fit_auto(
                      [](long hi) {
                        std::vector<std::int64_t> v;
                        for (long n = 0; n <= hi; ++n) v.push_back(std::int64_t(1) << std::min(n, 40L));
                        return v;
                      },
                      1, 32),
                  WindowTooShort);
}
