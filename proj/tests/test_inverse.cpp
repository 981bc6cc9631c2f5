#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "steklov/inverse.hpp"
#include "steklov/trig_poly.hpp"
#include "support.hpp"

using namespace steklov;
using steklov::testing::random_admissible;
using steklov::testing::random_polygon_with;

namespace {

BoundaryData triangle_345() {
  ConvexPolygon tri;
  tri.vertices = {{0, 0}, {4, 0}, {0, 3}};
  return extract_boundary_data(tri);
}

BoundaryData unit_square() {
  BoundaryData d;
  d.lengths = {1, 1, 1, 1};
  d.angles = {kPi / 2, kPi / 2, kPi / 2, kPi / 2};
  return d;
}

}  // namespace

TEST_CASE("angle classification") {
  auto odd = classify_angle(kPi / 3);
  CHECK(odd.kind == AngleKind::kOdd);
  CHECK(odd.index == 1);
  CHECK(odd.parity == -1);
  odd = classify_angle(kPi / 5);
  CHECK(odd.kind == AngleKind::kOdd);
  CHECK(odd.index == 2);
  CHECK(odd.parity == +1);
  auto even = classify_angle(kPi / 2);
  CHECK(even.kind == AngleKind::kEven);
  CHECK(even.index == 1);
  CHECK(even.parity == -1);
  even = classify_angle(kPi / 4);
  CHECK(even.kind == AngleKind::kEven);
  CHECK(even.index == 2);
  CHECK(even.parity == +1);
  CHECK(classify_angle(0.7).kind == AngleKind::kGeneric);
  CHECK(classify_angle(kPi / 3 + 1e-4).kind == AngleKind::kGeneric);
}

TEST_CASE("exact angle classification") {
  CHECK(classify_angle_exact(Rational(1, 3)).kind == AngleKind::kOdd);
  CHECK(classify_angle_exact(Rational(1, 6)).kind == AngleKind::kEven);
  CHECK(classify_angle_exact(Rational(2, 5)).kind == AngleKind::kGeneric);
}

TEST_CASE("3-4-5 triangle is admissible, the square is not") {
  const auto tri = admissibility(triangle_345(), AdmissibilityMode::kFloat);
  CHECK(tri.admissible == Verdict::kYes);
  const auto sq = admissibility(unit_square(), AdmissibilityMode::kFloat);
  CHECK(sq.admissible == Verdict::kNo);
  CHECK_FALSE(sq.reasons.empty());
}

TEST_CASE("exact admissibility decides rational near-misses") {
  BoundaryData d = unit_square();
  d.lengths_exact = {Rational(1), Rational(1), Rational(1), Rational(1)};
  d.angles_pi_exact = {Rational(1, 2), Rational(1, 2), Rational(1, 2),
                       Rational(1, 2)};
  CHECK(admissibility(d, AdmissibilityMode::kExact).admissible == Verdict::kNo);
}

TEST_CASE("odd angles break admissibility but not weak admissibility") {
  ConvexPolygon tri;
  tri.vertices = {{0, 0}, {std::sqrt(3.0), 0}, {0, 1}};  // 30-60-90
  const auto d = extract_boundary_data(tri);
  const auto rep = admissibility(d, AdmissibilityMode::kFloat);
  CHECK(rep.admissible == Verdict::kNo);
  CHECK(rep.weakly_edge_admissible == Verdict::kYes);
}

TEST_CASE("invariant vectors are the vertex c-values") {
  const auto d = triangle_345();
  const auto inv = invariant_vectors(d);
  REQUIRE(inv.C.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(inv.C[i] == doctest::Approx(c_of_angle(d.angles[i])));
    CHECK(inv.C_abs[i] == doctest::Approx(std::abs(inv.C[i])));
  }
}

TEST_CASE("exceptional components split at even vertices") {
  // pentagon with even angles at two vertices
  std::mt19937 rng(41);
  const auto d = random_admissible(5, rng, {{0, kPi / 2}, {2, kPi / 2}});
  const auto comps = exceptional_components(d);
  REQUIRE(comps.size() == 2);
  std::size_t total_edges = 0;
  for (const auto& y : comps) total_edges += y.lengths.size();
  CHECK(total_edges == 5);
  // reversal is an involution
  const auto r = reverse_component(reverse_component(comps[0]));
  CHECK(r.lengths == comps[0].lengths);
  CHECK(r.C == comps[0].C);
}

TEST_CASE("reduce_polygon merges edges at odd vertices") {
  ConvexPolygon tri;
  tri.vertices = {{0, 0}, {std::sqrt(3.0), 0}, {0, 1}};  // odd angle pi/3
  const auto d = extract_boundary_data(tri);
  const auto red = reduce_polygon(d);
  CHECK(red.edges.size() == 2);
  CHECK(red.total_length() == doctest::Approx(d.perimeter()));
  bool any_curved = false;
  for (const auto& e : red.edges) any_curved |= e.curved;
  CHECK(any_curved);
  CHECK_FALSE(red.smooth_domain);

  // equilateral: every vertex odd, so the reduction is a smooth domain
  BoundaryData eq;
  eq.lengths = {1, 1, 1};
  eq.angles = {kPi / 3, kPi / 3, kPi / 3};
  const auto smooth = reduce_polygon(eq);
  CHECK(smooth.smooth_domain);
  CHECK(smooth.total_length() == doctest::Approx(3.0));
}

TEST_CASE("inverse c preimages") {
  const auto odd = inverse_c_preimages(0.0, 0.1);
  REQUIRE(odd.size() >= 3);
  CHECK(odd[0] == doctest::Approx(kPi / 3));  // descending
  CHECK(odd[1] == doctest::Approx(kPi / 5));
  for (double s : {0.1, 0.5, 0.9}) {
    const double a = obtuse_c_preimage(s);
    CHECK(a > kPi / 2);
    CHECK(a < kPi);
    CHECK(std::abs(std::abs(c_of_angle(a)) - s) < 1e-12);
    const auto all = inverse_c_preimages(s, 0.2);
    REQUIRE(!all.empty());
    CHECK(all[0] == doctest::Approx(a));
    for (double x : all) CHECK(std::abs(std::abs(c_of_angle(x)) - s) < 1e-10);
    CHECK(std::is_sorted(all.rbegin(), all.rend()));
  }
}

TEST_CASE("rational angle transfer") {
  const auto t0 = rational_angle_transfer(Rational(1, 3), 0);
  REQUIRE(t0.size() == 1);
  CHECK(t0[0] == Rational(1, 3));
  const auto t1 = rational_angle_transfer(Rational(1, 3), 1);
  // 1/3 / (2/3 + 1) = 1/5; 1/3 / (2/3 - 1) = -1 falls outside (0,1)
  REQUIRE(t1.size() == 1);
  CHECK(t1[0] == Rational(1, 5));
  const auto t2 = rational_angle_transfer(Rational(2, 5), 1);
  for (const auto& q : t2) {
    CHECK(q > Rational(0));
    CHECK(q < Rational(1));
  }
}

TEST_CASE("enumeration returns the target itself") {
  std::mt19937 rng(43);
  const auto d = random_admissible(5, rng);
  const auto set = enumerate_admissible_candidates(d);
  CHECK(set.verdict == EnumerationVerdict::kFinite);
  CHECK(set.cap == 10);  // C(5,3), no even angles
  CHECK(set.candidates.size() <= set.cap);
  bool found = false;
  for (const auto& c : set.candidates) found |= congruent(c, d, 1e-6);
  CHECK(found);
}

TEST_CASE("enumeration caps follow the even-angle pattern") {
  std::mt19937 rng(44);
  const auto e1 = random_admissible(5, rng, {{0, kPi / 2}});
  CHECK(enumerate_admissible_candidates(e1).cap == 6);  // C(4,2)
  const auto e2adj = random_admissible(5, rng, {{0, kPi / 2}, {1, kPi / 2}});
  CHECK(enumerate_admissible_candidates(e2adj).cap == 6);  // 2(n-2)
  const auto e2non = random_admissible(5, rng, {{0, kPi / 2}, {2, kPi / 2}});
  CHECK(enumerate_admissible_candidates(e2non).cap == 12);  // 4(n-2)
}

TEST_CASE("weak enumeration on a reduced target") {
  ConvexPolygon tri;
  tri.vertices = {{0, 0}, {std::sqrt(3.0), 0}, {0, 1}};  // 30-60-90
  const auto d = extract_boundary_data(tri);
  const auto set = enumerate_weak_candidates(d, 1.0, 1);
  CHECK(set.verdict == EnumerationVerdict::kFinite);
  bool found = false;
  for (const auto& c : set.candidates) found |= congruent(c, d, 1e-6);
  CHECK(found);
}

TEST_CASE("weak enumeration flags the quadrilateral continuum class") {
  BoundaryData d;
  d.lengths = {0.3, 0.7, 0.3, 0.7};
  d.angles = {kPi / 3, 2 * kPi / 3, kPi / 3, 2 * kPi / 3};
  const auto set = enumerate_weak_candidates(d, 1.0, 1);
  CHECK(set.verdict == EnumerationVerdict::kContinuum);
  REQUIRE(set.family.has_value());
  // family members share the charpoly
  const auto p = build_charpoly(d);
  const auto x = 0.5 * (set.family->x_min + set.family->x_max);
  const auto member = set.family->member(x);
  CHECK(charpoly_distance(p, build_charpoly(member), 1e-9) < 1e-10);
}
