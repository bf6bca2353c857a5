#include <doctest.h>

#include "mcmlab/errors.hpp"
#include "mcmlab/graded.hpp"

using namespace mcmlab;

namespace {

RingPtr<Fp> a1() { return make_ring<Fp>({"x", "y"}, {"x*y"}, FieldSpec{}); }

// Independent Hilbert function of a monomial quotient in degree D.
std::size_t standard_count(std::size_t nvars, const std::vector<Monomial>& gens, long D) {
  std::size_t count = 0;
  for (const auto& m : monomials_of_degree(nvars, static_cast<unsigned>(D))) {
    bool divisible = false;
    for (const auto& g : gens) divisible = divisible || g.divides(m);
    if (!divisible) ++count;
  }
  return count;
}

bool vanishes(const GradedRing<Fp>& R, const PolyMatrix<Fp>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& p = m(i, j);
      if (!p.is_zero() && !R.coords(p, R.degree(p)).empty()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("graded slices of monomial quotients") {
  auto ring = make_ring<Fp>({"x", "y", "z"}, {"x^2", "y^2"}, FieldSpec{});
  GradedRing<Fp> R(ring);
  for (long D = 0; D <= 8; ++D) {
    CHECK(R.dim(D) == standard_count(3, {Monomial{2, 0, 0}, Monomial{0, 2, 0}}, D));
  }
  CHECK(R.dim(-1) == 0);
  CHECK(R.coords(ring->parse("x^2*z"), 3).empty());
  CHECK_THROWS_AS(R.coords(ring->parse("x + y^2"), 1), NotGraded);
  auto p = ring->parse("3*x*y*z - z^3");
  CHECK(R.from_coords(R.coords(p, 3), 3) == p);
}

TEST_CASE("weighted slices") {
  auto cusp = make_ring<Fp>({"x", "y"}, {"x^2 - y^3"}, FieldSpec{});
  GradedRing<Fp> R(cusp);
  CHECK(R.weights() == std::vector<int>{3, 2});
  // k[t^2, t^3]: every degree except 1
  CHECK(R.dim(0) == 1);
  CHECK(R.dim(1) == 0);
  for (long D = 2; D <= 12; ++D) CHECK(R.dim(D) == 1);
}

TEST_CASE("degree graph") {
  DegreeGraph g;
  g.add_nodes(4);
  g.relate(0, 1, 2);
  g.relate(1, 2, -1);
  auto d = g.solve();
  REQUIRE(d);
  CHECK((*d)[0] - (*d)[1] == 2);
  CHECK((*d)[1] - (*d)[2] == -1);
  CHECK(std::min({(*d)[0], (*d)[1], (*d)[2]}) == 0);
  CHECK((*d)[3] == 0);
  g.pin(3, 5);
  CHECK((*g.solve())[3] == 5);
  g.relate(0, 2, 7);
  CHECK(!g.solve());
}

TEST_CASE("kernels on the node") {
  auto ring = a1();
  GradedRing<Fp> R(ring);
  auto P = grade(PolyMatrix<Fp>::parse(*ring, {{"x"}}), ring->weights);
  auto K = graded_kernel(R, P);
  REQUIRE(K.mat.cols() == 1);
  CHECK(K.mat(0, 0) == ring->parse("y"));
  CHECK(K.cols == std::vector<long>{2});

  auto two = grade(PolyMatrix<Fp>::parse(*ring, {{"x", "y"}}), ring->weights);
  auto K2 = graded_kernel(R, two);
  CHECK(K2.mat.cols() == 2);
  CHECK(vanishes(R, two.mat * K2.mat));
}

TEST_CASE("kernel of the residue field over a complete intersection") {
  auto ring = make_ring<Fp>({"x", "y", "z"}, {"x^2", "y^2"}, FieldSpec{});
  GradedRing<Fp> R(ring);
  auto d1 = grade(PolyMatrix<Fp>::parse(*ring, {{"x", "y", "z"}}), ring->weights);
  auto d2 = graded_kernel(R, d1);
  // x, y, z and the Koszul relations yz, xz, xy: 3 + 2 linear syzygies
  CHECK(d2.mat.cols() == 5);
  CHECK(vanishes(R, d1.mat * d2.mat));
  CHECK(vanishes(R, d2.mat * graded_kernel(R, d2).mat));
  auto d3 = graded_kernel(R, d2);
  CHECK(d3.mat.cols() == 7);
}

TEST_CASE("minimal columns and solving") {
  auto ring = a1();
  GradedRing<Fp> R(ring);
  auto mixed = PolyMatrix<Fp>::parse(*ring, {{"x", "x + y^2"}});
  CHECK_THROWS_AS(grade(mixed, ring->weights), NotGraded);
  auto Q = grade(PolyMatrix<Fp>::parse(*ring, {{"x", "x^2", "y", "x^2 + y^2"}}), ring->weights);
  CHECK(minimal_columns(R, Q) == std::vector<std::size_t>{0, 2});

  GradedSolver<Fp> S(R, Q);
  auto sol = S.solve({ring->parse("x^3 - 2*y^3")}, 3);
  REQUIRE(sol);
  Polynomial<Fp> back;
  for (std::size_t j = 0; j < 4; ++j) back += Q.mat(0, j) * (*sol)[j];
  CHECK(R.coords(back - ring->parse("x^3 - 2*y^3"), 3).empty());
  GradedSolver<Fp> only_x(R, grade(PolyMatrix<Fp>::parse(*ring, {{"x"}}), ring->weights));
  CHECK(!only_x.solve({ring->parse("y^2")}, 2));
}
