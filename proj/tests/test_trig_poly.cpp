#include <doctest.h>

#include <cmath>
#include <random>

#include "steklov/trig_poly.hpp"
#include "support.hpp"

using namespace steklov;
using steklov::testing::random_polygon;
using steklov::testing::random_polygon_with;

TEST_CASE("c_of_angle at the distinguished angles") {
  CHECK(c_of_angle(kPi / 2) == doctest::Approx(-1.0));   // even, m = 1
  CHECK(c_of_angle(kPi / 4) == doctest::Approx(1.0));    // even, m = 2
  CHECK(c_of_angle(kPi / 3) == doctest::Approx(0.0).epsilon(1e-12));  // odd
  CHECK(c_of_angle(kPi / 5) == doctest::Approx(0.0).epsilon(1e-12));  // odd
}

TEST_CASE("unit square charpoly is cos(4t) + 4 cos(2t) + 3") {
  BoundaryData d;
  d.lengths = {1, 1, 1, 1};
  d.angles = {kPi / 2, kPi / 2, kPi / 2, kPi / 2};
  const auto p = build_charpoly(d);
  REQUIRE(p.terms.size() == 2);
  CHECK(p.terms[0].frequency == doctest::Approx(2.0));
  CHECK(p.terms[0].coefficient == doctest::Approx(4.0));
  CHECK(p.terms[1].frequency == doctest::Approx(4.0));
  CHECK(p.terms[1].coefficient == doctest::Approx(1.0));
  CHECK(p.constant == doctest::Approx(3.0));
  // factorization check: p(t) = 2 (cos 2t + 1)^2
  for (double t = 0.0; t < 7.0; t += 0.37) {
    const double c = std::cos(2 * t) + 1.0;
    CHECK(p.eval(t) == doctest::Approx(2 * c * c).epsilon(1e-12));
  }
}

TEST_CASE("equilateral triangle of perimeter 1 gives cos t + 1") {
  BoundaryData d;
  d.lengths = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  d.angles = {kPi / 3, kPi / 3, kPi / 3};
  const auto p = build_charpoly(d);
  REQUIRE(p.terms.size() == 1);
  CHECK(p.terms[0].frequency == doctest::Approx(1.0));
  CHECK(p.terms[0].coefficient == doctest::Approx(1.0));
  CHECK(p.constant == doctest::Approx(1.0));
}

TEST_CASE("smooth charpoly") {
  const auto p = smooth_charpoly(2.5);
  REQUIRE(p.terms.size() == 1);
  CHECK(p.terms[0].frequency == doctest::Approx(2.5));
  CHECK(p.terms[0].coefficient == doctest::Approx(1.0));
  CHECK(p.constant == doctest::Approx(-1.0));
}

TEST_CASE("charpoly is a dihedral invariant") {
  std::mt19937 rng(31);
  const auto d = random_polygon(5, rng);
  const auto p = build_charpoly(d);
  for (std::size_t off = 0; off < 5; ++off) {
    for (bool refl : {false, true}) {
      const auto q = build_charpoly(relabel(d, DihedralLabeling{off, refl}));
      CHECK(charpoly_distance(p, q, 1e-9) < 1e-10);
    }
  }
}

TEST_CASE("charpoly scales frequencies with the perimeter") {
  std::mt19937 rng(32);
  auto d = random_polygon(4, rng);
  const auto p = build_charpoly(d);
  for (double& l : d.lengths) l *= 2.0;
  const auto q = build_charpoly(d);
  REQUIRE(p.terms.size() == q.terms.size());
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    CHECK(q.terms[i].frequency == doctest::Approx(2 * p.terms[i].frequency));
    CHECK(q.terms[i].coefficient == doctest::Approx(p.terms[i].coefficient));
  }
  CHECK(q.constant == doctest::Approx(p.constant));
}

TEST_CASE("eval_derivative matches finite differences") {
  std::mt19937 rng(33);
  const auto p = build_charpoly(random_polygon(4, rng));
  const double h = 1e-5;
  for (double t : {0.4, 1.7, 5.2}) {
    const double fd1 = (p.eval(t + h) - p.eval(t - h)) / (2 * h);
    CHECK(p.eval_derivative(t, 1) == doctest::Approx(fd1).epsilon(1e-6));
    const double fd2 = (p.eval(t + h) - 2 * p.eval(t) + p.eval(t - h)) / (h * h);
    CHECK(p.eval_derivative(t, 2) == doctest::Approx(fd2).epsilon(1e-4));
  }
  CHECK(p.eval_derivative(1.0, 0) == doctest::Approx(p.eval(1.0)));
}

TEST_CASE("canonicalize merges close frequencies and strips zeros") {
  TrigPoly p;
  p.terms = {{1.0, 0.5}, {1.0 + 1e-12, 0.5}, {2.0, 1e-15}, {1e-13, 0.25}};
  p.constant = 0.5;
  const auto q = canonicalize(p, 1e-9);
  REQUIRE(q.terms.size() == 1);
  CHECK(q.terms[0].frequency == doctest::Approx(1.0));
  CHECK(q.terms[0].coefficient == doctest::Approx(1.0));
  CHECK(q.constant == doctest::Approx(0.75));
}

TEST_CASE("equal_charpoly distinguishes polygons") {
  std::mt19937 rng(34);
  const auto a = build_charpoly(random_polygon(5, rng));
  const auto b = build_charpoly(random_polygon(5, rng));
  CHECK(equal_charpoly(a, a, 1e-10));
  CHECK_FALSE(equal_charpoly(a, b, 1e-10));
}

TEST_CASE("reduced polygon carries the same charpoly up to the constant sign") {
  // 30-60-90 triangle: pi/3 is odd (parity -1), pi/2 and pi/6 are even
  ConvexPolygon tri;
  tri.vertices = {{0, 0}, {std::sqrt(3.0), 0}, {0, 1}};
  const auto d = extract_boundary_data(tri);
  const auto check = reduced_charpoly_check(d, 1e-9);
  CHECK(check.match);
  CHECK(check.parity_product == -1);
  CHECK(check.constant_sign_flip);
}
