#pragma once

#include <string>
#include <vector>

#include "steklov/geometry.hpp"

namespace steklov {

/// Sector of a disk (r1 = 0) or an annulus.
struct PolarRectangle {
  double r1 = 0.0;   // inner radius
  double r2 = 1.0;   // outer radius
  double alpha = 1.0;  // opening angle

  double radial_length() const { return r2 - r1; }
  double inner_arc() const { return r1 * alpha; }
  double outer_arc() const { return r2 * alpha; }
};

struct BoundResult {
  double value = 0.0;
  std::string formula;
  bool hypotheses_ok = true;
  std::string hypothesis_report;
  double sharp_value = 0.0;  // only for the isosceles bound
};

/// sigma_k <= 2 pi^2 k^2 w / l^2 for a domain containing an l x w rectangle
/// with the long sides on the boundary.
BoundResult bound_rectangle(double ell, double w, unsigned k);

/// sigma_k <= alpha k^2 pi^2 / L (1 + 2 r1 / L) = k^2 pi^2 (s1+s2)/L^2.
BoundResult bound_polar_rectangle(const PolarRectangle& s, unsigned k);

enum class PassageShape { kQuadrilateral, kTriangle };

/// Long thin passage bounds: 2 k^2 pi^3 w/(l-3w)^2 (quadrilateral, l > 3w)
/// or k^2 pi^3 w/(l-2w)^2 (triangle, w < l/2).
BoundResult bound_passage(PassageShape shape, double ell, double w, unsigned k);

/// sigma_k L <= (8 sqrt(3)/3) pi^2 k^2 alpha for a triangle with smallest
/// angle alpha.
BoundResult bound_triangle_min_angle(double alpha, double perimeter, unsigned k);

/// Isosceles triangle with the two equal angles alpha <= the third angle:
/// sigma_{2k} L <= pi^2 k^2 2(1+cos a)/cos a * a <= 6 pi^2 k^2 a.
/// value holds the simplified bound, sharp_value the sharp one.
BoundResult bound_isosceles_even(double alpha, unsigned k);

/// n-gon inside [0, l*] x [-w*/2, w*/2] with w* < l*/(3(n-1)).
BoundResult bound_thin_ngon(double ell_star, double w_star, unsigned n, unsigned k);

struct ConvexNgonConstants {
  double delta_n = 0.0;
  double c_n = 0.0;
};

/// delta_n just below 0.98/(3n-2) and the companion constant C_n.
ConvexNgonConstants convex_ngon_constants(unsigned n);

/// sigma_k L <= C_n k^2 alpha_min whenever alpha_min < delta_n.
BoundResult bound_convex_ngon(unsigned n, double alpha_min, double perimeter,
                              unsigned k);

/// alpha_j >= min{delta_n, sigma_k L / (C_n k^2)} for every interior angle.
double angle_lower_bound(unsigned n, double sigma_k, double perimeter, unsigned k);

/// All bounds of this module that can be instantiated from the polygon's
/// geometry alone: disk sectors at every vertex, the triangle bounds for
/// n = 3, passage bounds when the polygon itself qualifies, the bounding-box
/// thin-n-gon bound, and the small-angle convex bound.
std::vector<BoundResult> bounds_for_polygon(const ConvexPolygon& poly, unsigned k);

}  // namespace steklov
