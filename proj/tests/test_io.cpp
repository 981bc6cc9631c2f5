#include <doctest.h>

#include <cmath>

#include "steklov/io.hpp"

using namespace steklov;

TEST_CASE("polygon json round trip with rationals") {
  Json j;
  j["lengths"] = {"1/3", "1/3", "1/3"};
  j["angles_pi"] = {"1/3", "1/3", "1/3"};
  const auto d = boundary_from_json(j);
  REQUIRE(d.size() == 3);
  CHECK(d.has_exact());
  CHECK(d.lengths[0] == doctest::Approx(1.0 / 3));
  CHECK(d.angles[0] == doctest::Approx(kPi / 3));
  CHECK(d.angles_pi_exact[0] == Rational(1, 3));
  const auto back = boundary_from_json(boundary_to_json(d));
  CHECK(back.has_exact());
  CHECK(back.lengths_exact[1] == Rational(1, 3));
}

TEST_CASE("polygon json from vertices") {
  Json j;
  j["vertices"] = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  const auto d = boundary_from_json(j);
  REQUIRE(d.size() == 4);
  CHECK(d.perimeter() == doctest::Approx(4.0));
  CHECK(d.angles[0] == doctest::Approx(kPi / 2));
}

TEST_CASE("malformed polygon json throws") {
  Json j;
  j["lengths"] = {1.0, 1.0, 1.0};
  // missing angles
  CHECK_THROWS(boundary_from_json(j));
}

TEST_CASE("trig poly json round trip") {
  TrigPoly p;
  p.terms = {{2.0, 4.0}, {4.0, 1.0}};
  p.constant = 3.0;
  const auto j = trig_poly_to_json(p);
  CHECK(j["constant"] == 3.0);
  const auto q = trig_poly_from_json(j);
  REQUIRE(q.terms.size() == 2);
  CHECK(q.terms[1].frequency == doctest::Approx(4.0));
  CHECK(equal_charpoly(p, q, 1e-12));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/7") == Rational(3, 7));
  CHECK(parse_rational("5") == Rational(5));
  CHECK(!parse_rational("a/b").has_value());
  CHECK(!parse_rational("1/0").has_value());
}

TEST_CASE("csv outputs carry headers") {
  const auto spec = find_roots(smooth_charpoly(1.0), 13.0);
  const auto csv = roots_to_csv(spec);
  CHECK(csv.rfind("index,nu,multiplicity_source", 0) == 0);

  BoundaryData d;
  d.lengths = {1, 1, 1, 1};
  d.angles = {kPi / 2, kPi / 2, kPi / 2, kPi / 2};
  const auto ref = refined_spectrum(d, 0.4, 1, 2);
  const auto scsv = spectrum_to_csv(ref);
  CHECK(scsv.rfind("index,sigma,mesh_h,extrapolated", 0) == 0);
}
