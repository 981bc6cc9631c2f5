#pragma once

// Shared randomized-polygon helpers for the test binaries.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "steklov/geometry.hpp"
#include "steklov/inverse.hpp"

namespace steklov::testing {

// Lengths closing the edge path whose directions are fixed by the given
// interior angles: random positive lengths, then the best-conditioned pair
// adjusted to absorb the closure defect.
inline std::optional<std::vector<double>> lengths_for_angles(
    const std::vector<double>& angles, std::mt19937& rng) {
  const std::size_t n = angles.size();
  std::vector<double> dir(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) dir[i] = dir[i - 1] + kPi - angles[i - 1];
  std::uniform_real_distribution<double> U(0.5, 1.5);
  std::vector<double> len(n);
  for (double& l : len) l = U(rng);

  std::size_t bi = 0, bj = 1;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double det = std::cos(dir[i]) * std::sin(dir[j]) -
                         std::sin(dir[i]) * std::cos(dir[j]);
      if (std::abs(det) > best) {
        best = std::abs(det);
        bi = i;
        bj = j;
      }
    }
  }
  if (best < 0.3) return std::nullopt;
  double rx = 0.0, ry = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rx += len[i] * std::cos(dir[i]);
    ry += len[i] * std::sin(dir[i]);
  }
  const double det = std::cos(dir[bi]) * std::sin(dir[bj]) -
                     std::sin(dir[bi]) * std::cos(dir[bj]);
  len[bi] += (-rx * std::sin(dir[bj]) + ry * std::cos(dir[bj])) / det;
  len[bj] += (rx * std::sin(dir[bi]) - ry * std::cos(dir[bi])) / det;
  for (double l : len) {
    if (l < 0.05) return std::nullopt;
  }
  return len;
}

inline void normalize_perimeter(BoundaryData& data, double target = 1.0) {
  const double s = target / data.perimeter();
  for (double& l : data.lengths) l *= s;
}

// True when alpha is suspiciously close to some pi/k (k <= 64).
inline bool near_rational_pi(double alpha, double tol = 1e-5) {
  for (int k = 2; k <= 64; ++k) {
    if (std::abs(alpha - kPi / k) < tol) return true;
  }
  return false;
}

// Convex position angles: turning numbers t_i in (0.2, pi - 0.2) summing to
// 2 pi, angles pi - t_i, avoiding the pi/k lattice unless prescribed.
// prescribed maps position -> exact angle value (e.g. even angles).
inline std::optional<std::vector<double>> random_angles(
    std::size_t n, std::mt19937& rng,
    const std::vector<std::pair<std::size_t, double>>& prescribed = {}) {
  std::vector<double> angles(n, -1.0);
  double remaining = (static_cast<double>(n) - 2.0) * kPi;
  std::size_t free_count = n;
  for (const auto& [pos, val] : prescribed) {
    angles[pos] = val;
    remaining -= val;
    --free_count;
  }
  if (free_count == 0) return std::nullopt;
  // Random positive weights for the free angles, rescaled to the remaining
  // sum; rejection keeps everything convex and off the pi/k lattice.
  std::uniform_real_distribution<double> U(0.5, 1.5);
  std::vector<double> w;
  double ws = 0.0;
  for (std::size_t i = 0; i < free_count; ++i) {
    w.push_back(U(rng));
    ws += w.back();
  }
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (angles[i] >= 0.0) continue;
    angles[i] = remaining * w[j++] / ws;
    if (angles[i] < 0.2 || angles[i] > kPi - 0.05) return std::nullopt;
    if (near_rational_pi(angles[i])) return std::nullopt;
  }
  return angles;
}

// Random polygon with the prescribed angles at the prescribed positions.
// Returns data passing validate_boundary_data; nullopt when the draw failed.
inline std::optional<BoundaryData> random_polygon_with(
    std::size_t n, std::mt19937& rng,
    const std::vector<std::pair<std::size_t, double>>& prescribed = {}) {
  const auto angles = random_angles(n, rng, prescribed);
  if (!angles) return std::nullopt;
  const auto lengths = lengths_for_angles(*angles, rng);
  if (!lengths) return std::nullopt;
  BoundaryData data;
  data.lengths = *lengths;
  data.angles = *angles;
  try {
    validate_boundary_data(data);
  } catch (const GeometryError&) {
    return std::nullopt;
  }
  return data;
}

// Retries until a draw succeeds.
inline BoundaryData random_polygon(std::size_t n, std::mt19937& rng) {
  for (int tries = 0; tries < 10000; ++tries) {
    if (auto data = random_polygon_with(n, rng)) return *data;
  }
  throw GeometryError("random polygon generation failed");
}

// Retries until the draw is admissible (float verdict kYes).
inline BoundaryData random_admissible(
    std::size_t n, std::mt19937& rng,
    const std::vector<std::pair<std::size_t, double>>& prescribed = {}) {
  for (int tries = 0; tries < 10000; ++tries) {
    auto data = random_polygon_with(n, rng, prescribed);
    if (!data) continue;
    const auto adm = admissibility(*data, AdmissibilityMode::kFloat);
    if (adm.admissible == Verdict::kYes) return *data;
  }
  throw GeometryError("random admissible polygon generation failed");
}

// All angles obtuse (possible for n >= 5).
inline BoundaryData random_all_obtuse(std::size_t n, std::mt19937& rng) {
  for (int tries = 0; tries < 20000; ++tries) {
    auto data = random_polygon_with(n, rng);
    if (!data) continue;
    bool obtuse = true;
    for (double a : data->angles) obtuse &= a > kPi / 2.0 + 1e-3;
    if (!obtuse) continue;
    const auto adm = admissibility(*data, AdmissibilityMode::kFloat);
    if (adm.admissible == Verdict::kYes) return *data;
  }
  throw GeometryError("random all-obtuse polygon generation failed");
}

}  // namespace steklov::testing
