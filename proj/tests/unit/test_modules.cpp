#include <doctest.h>

#include "mcmlab/errors.hpp"
#include "mcmlab/modules.hpp"

using namespace mcmlab;

namespace {

RingPtr<Fp> a1() { return make_ring<Fp>({"x", "y"}, {"x*y"}, FieldSpec{}); }
RingPtr<Fp> ci() { return make_ring<Fp>({"x", "y", "z"}, {"x^2", "y^2"}, FieldSpec{}); }

PolyMatrix<Fp> mat(const RingPtr<Fp>& r, const std::vector<std::vector<std::string>>& rows) {
  return PolyMatrix<Fp>::parse(*r, rows);
}

Module<Fp> mf(const RingPtr<Fp>& r, const std::vector<std::vector<std::string>>& phi,
              const std::vector<std::vector<std::string>>& psi) {
  return Module<Fp>::from_mf(r, {mat(r, phi), mat(r, psi)});
}

}  // namespace

TEST_CASE("factorization validation names the bad entry") {
  auto r = a1();
  CHECK(mf_validate(*r, {mat(r, {{"x"}}), mat(r, {{"y"}})}).ok);
  auto bad = mf_validate(*r, {mat(r, {{"x", "0"}, {"0", "y"}}), mat(r, {{"y", "0"}, {"0", "y"}})});
  CHECK(!bad.ok);
  CHECK(bad.message.find("entry (1,1)") != std::string::npos);
  CHECK_THROWS_AS(mf(r, {{"x"}}, {{"x"}}), InputError);
  CHECK(!mf_validate(*ci(), {mat(ci(), {{"x"}}), mat(ci(), {{"x"}})}).ok);
}

TEST_CASE("reduction splits off unit blocks") {
  auto r = a1();
  // (1 | xy) + (x | y): a zero summand
  auto zero_part = mf(r, {{"1", "0"}, {"0", "x"}}, {{"x*y", "0"}, {"0", "y"}});
  auto [m1, f1] = reduce_mf(zero_part.mf());
  CHECK(f1 == 0);
  CHECK(m1.phi == mat(r, {{"x"}}));
  CHECK(m1.psi == mat(r, {{"y"}}));

  // (xy | 1) + (x | y) conjugated by [[1, x], [0, 1]]: one free summand
  auto U = mat(r, {{"1", "x"}, {"0", "1"}}), Uinv = mat(r, {{"1", "-x"}, {"0", "1"}});
  auto phi = U * mat(r, {{"x*y", "0"}, {"0", "x"}});
  auto psi = mat(r, {{"1", "0"}, {"0", "y"}}) * Uinv;
  auto M = Module<Fp>::from_mf(r, {phi, psi});
  auto [m2, f2] = reduce_mf(M.mf());
  CHECK(f2 == 1);
  CHECK(mf_validate(*r, m2).ok);
  CHECK(m2.phi.rows() == 1);
  auto split = free_summand_split(M);
  CHECK(split.second == 1);
  CHECK(mu(split.first) == 1);
  CHECK(!is_free(M));
  CHECK(is_free(Module<Fp>::free(r, 3)));
  CHECK(is_free(mf(r, {{"x*y"}}, {{"1"}})));
}

TEST_CASE("minimal number of generators and minimal forms") {
  auto r = a1();
  auto M = Module<Fp>::from_presentation(r, mat(r, {{"1", "x"}, {"y", "0"}}));
  CHECK(mu(M) == 1);
  auto m = minimalize(M);
  CHECK(m.num_generators() == 1);
  CHECK(m.presentation().cols() == 0);
  CHECK(is_free(M));

  GradedRing<Fp> R(r);
  auto form = minimal_form(R, graded_presentation(M));
  // the surviving generator is e_1 and e_0 = -y e_1
  CHECK(form.from_min == mat(r, {{"0"}, {"1"}}));
  CHECK(form.to_min == mat(r, {{"-y", "1"}}));
}

TEST_CASE("Betti numbers of the residue field over k[x,y,z]/(x^2,y^2)") {
  auto r = ci();
  auto k = Module<Fp>::from_presentation(r, mat(r, {{"x", "y", "z"}}));
  auto b = betti_numbers(k, 10);
  // Poincare series (1+t)^3 / (1-t^2)^2 = (1+t) / (1-t)^2
  REQUIRE(b.size() == 11);
  for (std::size_t n = 0; n <= 10; ++n) CHECK(b[n] == 2 * n + 1);
  auto cx = complexity_estimate(b);
  REQUIRE(cx.complexity);
  CHECK(*cx.complexity == 2);
  CHECK(mu(syzygy(k, 1)) == 3);
  CHECK(!complexity_estimate({1, 2, 4, 8, 16, 32, 64, 128}).complexity);
}

TEST_CASE("factorization modules: periodic resolutions and syzygies") {
  auto r = a1();
  auto M = mf(r, {{"x"}}, {{"y"}});
  CHECK(betti_numbers(M, 6) == std::vector<std::size_t>(7, 1));
  auto s1 = syzygy(M, 1);
  CHECK(s1.mf().phi == mat(r, {{"y"}}));
  CHECK(syzygy(M, 2).mf().phi == mat(r, {{"x"}}));
  auto d = resolution(M, 4);
  REQUIRE(d.size() == 4);
  CHECK(d[1].mat == mat(r, {{"y"}}));
  // degrees: x from 1 to 0, y from 2 to 1, x from 3 to 2
  CHECK(d[0].rows == std::vector<long>{0});
  CHECK(d[1].cols == std::vector<long>{2});
  CHECK(d[2].cols == std::vector<long>{3});
  CHECK(d[3].cols == std::vector<long>{4});

  // the graded kernel engine reproduces the period from the plain presentation
  auto P = Module<Fp>::from_presentation(r, mat(r, {{"x"}}));
  auto e = resolution(P, 4);
  CHECK(e[1].mat == mat(r, {{"y"}}));
  CHECK(e[2].mat == mat(r, {{"x"}}));
  CHECK(betti_numbers(P, 5) == std::vector<std::size_t>(6, 1));
}

TEST_CASE("direct sums and free summands of presentations") {
  auto r = a1();
  auto sum = direct_sum(mf(r, {{"x"}}, {{"y"}}), mf(r, {{"y"}}, {{"x"}}));
  REQUIRE(sum.is_mf());
  CHECK(sum.mf().phi == mat(r, {{"x", "0"}, {"0", "y"}}));
  auto P = Module<Fp>::from_presentation(r, mat(r, {{"x"}, {"x"}}));
  auto [L, free] = free_summand_split(P);
  CHECK(free == 1);
  CHECK(L.num_generators() == 1);
  CHECK(!is_free(L));
}

TEST_CASE("matrix factorization of a graded MCM module") {
  auto r = a1();
  auto M = to_mf(Module<Fp>::from_presentation(r, mat(r, {{"x"}})));
  REQUIRE(M.is_mf());
  CHECK(M.mf().phi == mat(r, {{"x"}}));
  CHECK(M.mf().psi == mat(r, {{"y"}}));
  auto F = to_mf(Module<Fp>::free(r, 2).as_presentation());
  CHECK(F.free_rank() == 2);
  CHECK(F.mf().phi.rows() == 0);
  CHECK_THROWS_AS(to_mf(Module<Fp>::from_presentation(r, mat(r, {{"x", "y"}}))), InputError);
}

TEST_CASE("depth probe") {
  auto r = a1();
  CHECK(mcm_probe(mf(r, {{"x"}}, {{"y"}})).ok);
  auto k = mcm_probe(Module<Fp>::from_presentation(r, mat(r, {{"x", "y"}})));
  CHECK(!k.ok);
  CHECK(k.message.find("probabilistic") != std::string::npos);
}
