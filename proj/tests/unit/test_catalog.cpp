#include <doctest.h>

#include <chrono>

#include "mcmlab/catalog.hpp"
#include "mcmlab/errors.hpp"

using namespace mcmlab;
using namespace mcmlab::catalog;

TEST_CASE("catalog modules and sequences") {
  auto mods = modules();
  CHECK(mods.size() == 13);
  for (const auto& m : mods) {
    INFO(m.name);
    CHECK(is_free(m.module) == m.free);
  }
  for (const auto& s : sequences()) {
    INFO(s.name);
    CHECK(verify_exactness(s.sequence, 4).ok);
  }
  CHECK_THROWS_AS(curve_module(simple_curve(2), 2, 3), InputError);
  CHECK_THROWS_AS(node_quotient(node(), "z"), InputError);
}

TEST_CASE("every scenario passes within budget") {
  for (const auto& name : scenario_names()) {
    INFO(name);
    const auto t0 = std::chrono::steady_clock::now();
    auto rep = run_scenario(name);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& c : rep.checks) {
      INFO(c.quantity << ": expected " << c.expected << ", got " << c.actual);
      CHECK(c.ok);
    }
    CHECK(rep.ok());
    CHECK(secs < 10.0);
    MESSAGE(name << " " << secs << " s, " << rep.checks.size() << " checks");
  }
  CHECK_THROWS_AS(run_scenario("no-such-scenario"), InputError);
  CHECK(to_string(Provenance::Reference) == "reference value");
}
