#pragma once

#include <vector>

#include "steklov/trig_poly.hpp"

namespace steklov {

struct QuasiRoot {
  double location = 0.0;
  unsigned multiplicity = 1;
  bool tangential = false;      // even-order touch, no sign change
  bool multiplicity_capped = false;  // derivative cascade gave up (order > 6)
};

/// Nonnegative roots of an even trigonometric polynomial with the
/// half-multiplicity-at-zero convention: nu_j lists each positive root with
/// its multiplicity and a root at 0 with floor(mult / 2) copies.
struct QuasiSpectrum {
  std::vector<QuasiRoot> roots;   // distinct locations, ascending
  std::vector<double> values;     // the flattened nu_j sequence

  std::size_t count() const { return values.size(); }
};

struct FindRootsOptions {
  double touch_tol = 1e-8;        // |p| threshold for tangential roots
  double bisect_tol = 1e-12;
  unsigned max_derivative_order = 6;
};

QuasiSpectrum find_roots(const TrigPoly& p, double t_max,
                         const FindRootsOptions& opts = {});

/// j-th quasi-eigenvalue; throws when the enumeration did not reach index j
/// (extend t_max).
double nu(const QuasiSpectrum& spectrum, std::size_t j);

struct AsymptoticReport {
  std::vector<double> diffs;      // sigma_j - nu_j over the common range
  double fitted_exponent = 0.0;   // log-log slope of |diff| over the tail
  bool exponent_defined = false;
  double epsilon_ceiling = 0.0;   // min({pi/(2 alpha) - 1/2} U {1/4})
  std::size_t head_skip = 8;      // indices excluded from the fit
};

/// Index-wise comparison of a measured spectrum against the quasi-spectrum
/// of the polygon's characteristic polynomial.  Report only; no pass/fail.
AsymptoticReport asymptotic_compare(const std::vector<double>& sigma,
                                    const BoundaryData& data,
                                    std::size_t head_skip = 8);

double epsilon_ceiling(const BoundaryData& data);

}  // namespace steklov
