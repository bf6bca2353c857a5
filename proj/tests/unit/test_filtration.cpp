#include <doctest.h>

#include <set>

#include "mcmlab/errors.hpp"
#include "mcmlab/filtration.hpp"

using namespace mcmlab;

namespace {

RingPtr<Fp> a1() { return make_ring<Fp>({"x", "y"}, {"x*y"}, FieldSpec{}); }

std::set<std::string> printed(const RingSpec<Fp>& r, const std::vector<Polynomial<Fp>>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(r.print(p));
  return out;
}

Module<Fp> cyclic(const RingPtr<Fp>& r, const std::string& rel) {
  return Module<Fp>::from_presentation(r, PolyMatrix<Fp>::parse(*r, {{rel}}));
}

FiltrationSpec<Fp> closure_of(const RingSpec<Fp>& r, const std::vector<std::string>& gens) {
  FiltrationSpec<Fp> F;
  F.kind = FiltrationKind::IntegralClosure;
  for (const auto& g : gens) F.ideal.push_back(r.parse(g));
  return F;
}

}  // namespace

TEST_CASE("filtration generators") {
  auto r = a1();
  auto F = FiltrationSpec<Fp>::m_adic(*r);
  CHECK(F.is_m_adic());
  auto plane = make_ring<Fp>({"x", "y"}, {}, FieldSpec{});
  CHECK(printed(*plane, filtration_gens(*plane, FiltrationSpec<Fp>::m_adic(*plane), 2)) ==
        std::set<std::string>{"x^2", "x*y", "y^2"});
  CHECK(printed(*r, filtration_gens(*r, F, 0)) == std::set<std::string>{"1"});

  auto C = closure_of(*plane, {"x^2", "y^3"});
  CHECK(printed(*plane, filtration_gens(*plane, C, 1)).count("x*y^2") == 1);
  CHECK(printed(*plane, filtration_gens(*plane, C, 0)) == std::set<std::string>{"1"});
  FiltrationSpec<Fp> bad = closure_of(*plane, {"x^2"});
  bad.ideal.push_back(plane->parse("x + y"));
  CHECK_THROWS_AS(filtration_gens(*plane, bad, 1), InputError);
}

TEST_CASE("Newton polyhedron membership matches the rational inequality") {
  NewtonPolyhedron NP({{2, 0}, {0, 3}}, 2);
  for (long n = 0; n <= 4; ++n) {
    for (long a = 0; a <= 12; ++a) {
      for (long b = 0; b <= 15; ++b) CHECK(NP.contains({a, b}, n) == (3 * a + 2 * b >= 6 * n));
    }
  }
  // Iterated products of generators lie in the closure of the power.
  NewtonPolyhedron Q({{3, 0, 1}, {0, 2, 0}, {1, 1, 3}}, 3);
  for (long n = 1; n <= 3; ++n) {
    for (const auto& g : Q.closure_generators(n)) CHECK(Q.contains(g, n));
    CHECK(Q.contains({3L * n, 0, n}, n));
    CHECK(Q.contains({0, 2L * n, 0}, n));
  }
}

TEST_CASE("closure generators are multiplicative") {
  NewtonPolyhedron NP({{2, 0}, {0, 3}}, 2);
  for (long n = 0; n <= 6; ++n) {
    for (long m = 0; n + m <= 12; ++m) {
      for (const auto& a : NP.closure_generators(n)) {
        for (const auto& b : NP.closure_generators(m)) CHECK(NP.contains({a[0] + b[0], a[1] + b[1]}, n + m));
      }
    }
  }
}

TEST_CASE("integral closure of a sum with a fresh variable") {
  auto two = check_intclosum({{2}}, 1, 2);
  CHECK(two.equal);
  CHECK(two.lhs == std::vector<Exponent>{{0, 2}, {2, 1}, {4, 0}});
  auto zero = check_intclosum({{2, 0}, {0, 3}}, 2, 0);
  CHECK(zero.equal);
  CHECK(zero.lhs == std::vector<Exponent>{{0, 0, 0}});
  for (long n = 1; n <= 4; ++n) CHECK(check_intclosum({{2, 0}, {0, 3}}, 2, n).equal);
}

TEST_CASE("Hilbert tables on the node") {
  auto r = a1();
  auto F = FiltrationSpec<Fp>::m_adic(*r);
  auto A = Module<Fp>::free(r, 1);
  auto tA = hilbert_table(A, F, 0, 5);
  CHECK(tA.values == std::vector<std::int64_t>{1, 3, 5, 7, 9, 11});
  auto tx = hilbert_table(cyclic(r, "x"), F, 0, 5);
  CHECK(tx.values == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6});
  auto t3 = hilbert_table(Module<Fp>::free(r, 3), F, 0, 5);
  for (std::size_t n = 0; n <= 5; ++n) CHECK(t3.values[n] == 3 * tA.values[n]);

  // the same numbers through exact quotients A / F_{n+1} of a general adic filtration
  FiltrationSpec<Fp> G;
  G.ideal = {r->parse("x"), r->parse("y")};
  G.kind = FiltrationKind::Custom;
  G.table = {{r->constant(1)}};
  CHECK(hilbert_table(A, G, 0, 5).values == tA.values);
}

TEST_CASE("Hilbert coefficients") {
  auto r = a1();
  auto F = FiltrationSpec<Fp>::m_adic(*r);
  auto hA = hilbert_coefficients(Module<Fp>::free(r, 1), F);
  CHECK(hA.e == std::vector<BigInt>{2, 1});
  CHECK(hA.fit.stabilization_index <= 2);
  CHECK(fit_hilbert(hilbert_table(Module<Fp>::free(r, 2), F, 3, 12)).leading() == 4);
  auto hx = hilbert_coefficients(cyclic(r, "x"), F);
  CHECK(hx.e == std::vector<BigInt>{1, 0});
  auto h2 = hilbert_coefficients(Module<Fp>::free(r, 2), F);
  CHECK(h2.e == std::vector<BigInt>{4, 2});
  auto sum = direct_sum(cyclic(r, "x"), cyclic(r, "y"));
  auto hs = hilbert_coefficients(sum, F);
  auto hy = hilbert_coefficients(cyclic(r, "y"), F);
  CHECK(hs.e[0] == hx.e[0] + hy.e[0]);
  CHECK(hs.e[1] == hx.e[1] + hy.e[1]);

  auto ci = make_ring<Fp>({"x", "y", "z"}, {"x^2", "y^2"}, FieldSpec{});
  auto hc = hilbert_coefficients(Module<Fp>::free(ci, 1), FiltrationSpec<Fp>::m_adic(*ci));
  CHECK(hc.fit.degree == 1);
  CHECK(hc.e[0] == 4);

  auto u = is_ulrich(cyclic(r, "x"));
  CHECK(u.ulrich);
  CHECK(u.e1 == 0);
  CHECK(!is_ulrich(Module<Fp>::free(r, 1)).ulrich);
}

TEST_CASE("admissibility checks") {
  auto r = a1();
  CHECK(check_admissible(r, FiltrationSpec<Fp>::m_adic(*r), 6).ok());

  auto plane = make_ring<Fp>({"x", "y"}, {}, FieldSpec{});
  auto rep = check_admissible(plane, closure_of(*plane, {"x^2", "y^3"}), 12);
  CHECK(rep.axioms[2].ok);
  CHECK(rep.axioms[0].ok);
  CHECK(rep.ok());

  FiltrationSpec<Fp> bad;
  bad.kind = FiltrationKind::Custom;
  bad.ideal = {r->parse("x"), r->parse("y")};
  bad.table = {{r->constant(1)}, {r->parse("x"), r->parse("y")}, {r->parse("x^2")}};
  auto b = check_admissible(r, bad, 4);
  CHECK(!b.ok());
  CHECK(!b.axioms[0].ok);
  CHECK(b.axioms[0].witness == "n=2: y^2");
}

TEST_CASE("superficial elements on the node") {
  auto r = a1();
  auto F = FiltrationSpec<Fp>::m_adic(*r);
  auto A = Module<Fp>::free(r, 1);
  CHECK(superficial_check(r->parse("x + y"), A, F, 2, 10).ok);
  auto x = superficial_check(r->parse("x"), A, F, 2, 10);
  CHECK(!x.ok);
  REQUIRE(x.failing_n);
  CHECK(*x.failing_n == 2);
  CHECK(x.witness == "y");
  CHECK(superficial_check(r->parse("x + y"), Module<Fp>::free(r, 2), F, 2, 6).ok);
  CHECK_THROWS_AS(superficial_check(r->parse("x^2"), A, F, 2, 4), InputError);
}
