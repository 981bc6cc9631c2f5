#pragma once

#include <vector>

#include "steklov/geometry.hpp"
#include "steklov/rational.hpp"

namespace steklov {

/// One cosine term a * cos(f t).
struct TrigTerm {
  double frequency = 0.0;
  double coefficient = 0.0;
};

/// Finite even cosine series sum_f a_f cos(f t) + constant, frequencies
/// strictly increasing after canonicalization.  When built in exact mode
/// exact_frequencies runs parallel to terms and merging is exact.
struct TrigPoly {
  std::vector<TrigTerm> terms;
  double constant = 0.0;
  std::vector<Rational> exact_frequencies;

  bool has_exact() const { return exact_frequencies.size() == terms.size(); }
  double top_frequency() const {
    return terms.empty() ? 0.0 : terms.back().frequency;
  }
  /// sum |a_f| + |constant|; scale for residual tests.
  double coefficient_mass() const;

  double eval(double t) const;
  /// r-th derivative at t (analytic differentiation of the series).
  double eval_derivative(double t, unsigned order) const;
};

inline constexpr double kCoefTol = 1e-12;

/// c(alpha) = cos(pi^2 / (2 alpha)); requires alpha in (0, pi).
double c_of_angle(double alpha);

/// Characteristic trigonometric polynomial of the boundary data: half the
/// sum over all sign vectors of a_xi cos(|xi . l| t) minus the product of
/// sin(pi^2 / (2 alpha_j)).  Exact frequency bookkeeping is engaged when the
/// data carries exact rationals.
TrigPoly build_charpoly(const BoundaryData& data);

/// cos(L t) - 1, the characteristic polynomial of a smooth domain of
/// perimeter L.
TrigPoly smooth_charpoly(double perimeter);

/// Merges nearly equal frequencies, folds zero frequencies into the constant and
/// drops negligible coefficients.
TrigPoly canonicalize(const TrigPoly& p, double freq_tol, double coef_tol = kCoefTol);

bool equal_charpoly(const TrigPoly& p, const TrigPoly& q, double tol);

/// Maximum coefficient discrepancy between two canonicalized polynomials
/// under frequency pairing (infinity when the frequency supports differ).
double charpoly_distance(const TrigPoly& p, const TrigPoly& q, double freq_tol);

struct ReducedCharpolyCheck {
  bool match = false;
  bool constant_sign_flip = false;
  int parity_product = 1;  // product of parities of the removed odd angles
};

/// Verifies that the characteristic polynomials of a weakly edge-admissible
/// polygon and of its reduced polygon agree except for the sign of the
/// constant term, which flips by the parity product of the removed odd
/// angles.
ReducedCharpolyCheck reduced_charpoly_check(const BoundaryData& data,
                                            double tol = 1e-9);

}  // namespace steklov
