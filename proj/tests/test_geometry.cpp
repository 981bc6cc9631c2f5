#include <doctest.h>

#include <cmath>
#include <random>

#include "steklov/geometry.hpp"
#include "support.hpp"

using namespace steklov;
using steklov::testing::random_polygon;
using steklov::testing::random_polygon_with;

namespace {

BoundaryData unit_square() {
  BoundaryData d;
  d.lengths = {1, 1, 1, 1};
  d.angles = {kPi / 2, kPi / 2, kPi / 2, kPi / 2};
  return d;
}

}  // namespace

TEST_CASE("validate accepts the unit square") {
  CHECK_NOTHROW(validate_boundary_data(unit_square()));
}

TEST_CASE("validate rejects broken data") {
  auto d = unit_square();
  d.lengths[2] = 1.01;  // path no longer closes
  CHECK_THROWS_AS(validate_boundary_data(d), GeometryError);
  d = unit_square();
  d.angles[0] = -0.1;
  CHECK_THROWS_AS(validate_boundary_data(d), GeometryError);
}

TEST_CASE("extract/build round trip") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto d = random_polygon_with(3 + trial % 5, rng);
    if (!d) continue;
    const auto poly = build_polygon(*d);
    const auto back = extract_boundary_data(poly);
    REQUIRE(back.size() == d->size());
    for (std::size_t i = 0; i < d->size(); ++i) {
      CHECK(back.lengths[i] == doctest::Approx(d->lengths[i]).epsilon(1e-10));
      CHECK(back.angles[i] == doctest::Approx(d->angles[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("closure residual vanishes only on valid data") {
  std::mt19937 rng(12);
  const auto d = random_polygon(6, rng);
  CHECK(closure_residual(d.lengths, d.angles) < 1e-10);
  auto lengths = d.lengths;
  lengths[0] += 0.05;
  CHECK(closure_residual(lengths, d.angles) > 1e-3);
}

TEST_CASE("relabel is a group action and preserves congruence") {
  std::mt19937 rng(13);
  const auto d = random_polygon(5, rng);
  for (std::size_t off = 0; off < 5; ++off) {
    for (bool refl : {false, true}) {
      const auto g = DihedralLabeling{off, refl};
      const auto moved = relabel(d, g);
      CHECK_NOTHROW(validate_boundary_data(moved));
      CHECK(congruent(d, moved));
    }
  }
  // a genuinely different polygon is not congruent
  auto other = random_polygon(5, rng);
  CHECK_FALSE(congruent(d, other));
}

TEST_CASE("reconstruct_missing_angles recovers blanked angles") {
  std::mt19937 rng(17);
  int done = 0;
  while (done < 60) {
    const std::size_t n = 4 + rng() % 5;
    auto d = random_polygon_with(n, rng);
    if (!d) continue;
    PartialBoundaryData partial;
    partial.lengths = d->lengths;
    partial.angles.assign(n, std::nullopt);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t i = 3; i < n; ++i) partial.angles[idx[i]] = d->angles[idx[i]];
    const auto full = reconstruct_missing_angles(partial);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(full.angles[i] == doctest::Approx(d->angles[i]).epsilon(1e-9));
    ++done;
  }
}

TEST_CASE("reconstruct handles consecutive and wrap-around blanks") {
  std::mt19937 rng(18);
  const auto d = random_polygon(6, rng);
  for (std::size_t start : {std::size_t{0}, std::size_t{2}, std::size_t{4}, std::size_t{5}}) {
    PartialBoundaryData partial;
    partial.lengths = d.lengths;
    partial.angles.assign(6, std::nullopt);
    for (std::size_t i = 0; i < 6; ++i) partial.angles[i] = d.angles[i];
    for (std::size_t j = 0; j < 3; ++j) partial.angles[(start + j) % 6] = std::nullopt;
    const auto full = reconstruct_missing_angles(partial);
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(full.angles[i] == doctest::Approx(d.angles[i]).epsilon(1e-9));
  }
}

TEST_CASE("quad_from_asa_perimeter round trip") {
  std::mt19937 rng(19);
  int done = 0;
  while (done < 40) {
    auto d = random_polygon_with(4, rng);
    if (!d) continue;
    const auto rebuilt = quad_from_asa_perimeter(d->angles, 0, d->lengths[0],
                                                 d->perimeter());
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(rebuilt.lengths[i] == doctest::Approx(d->lengths[i]).epsilon(1e-8));
    ++done;
  }
}

TEST_CASE("edge_split_solve recovers hidden lengths") {
  std::mt19937 rng(23);
  int done = 0;
  while (done < 30) {
    auto d = random_polygon_with(6, rng);
    if (!d) continue;
    EdgeSplitData in;
    in.angles = d->angles;
    in.split_a = 0;
    in.split_b = 3;
    in.sum_a = d->lengths[0] + d->lengths[1];
    in.sum_b = d->lengths[3] + d->lengths[4];
    in.other_lengths = {d->lengths[2], d->lengths[5]};
    EdgeSplitResult out;
    try {
      out = edge_split_solve(in);
    } catch (const GeometryError&) {
      continue;  // inconsistent degenerate draw
    }
    if (!out.unique) continue;  // random data is generically non-degenerate
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(out.solution.lengths[i] == doctest::Approx(d->lengths[i]).epsilon(1e-8));
    ++done;
  }
}

TEST_CASE("edge_split_solve detects the parallel-bisector family") {
  // rhombus-type quadrilateral: angles pi/3, 2pi/3, pi/3, 2pi/3 with the
  // split vertices' bisectors parallel
  EdgeSplitData in;
  in.angles = {kPi / 3, 2 * kPi / 3, kPi / 3, 2 * kPi / 3};
  in.split_a = 0;
  in.split_b = 2;
  in.sum_a = 1.0;
  in.sum_b = 1.0;
  in.seed_la = 0.3;
  in.seed_lb = 0.3;
  const auto out = edge_split_solve(in);
  CHECK_FALSE(out.unique);
  CHECK(std::abs(out.psi - out.phi) < 1e-9);
  // every family member is a valid closed polygon preserving both sums
  for (int s = 0; s <= 10; ++s) {
    const double x = out.family.x_min +
                     (out.family.x_max - out.family.x_min) * (0.05 + 0.09 * s);
    const auto member = out.family.member(x);
    CHECK_NOTHROW(validate_boundary_data(member));
    CHECK(member.lengths[0] + member.lengths[1] == doctest::Approx(1.0));
    CHECK(member.lengths[2] + member.lengths[3] == doctest::Approx(1.0));
  }
}
