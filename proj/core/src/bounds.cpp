#include "steklov/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace steklov {

namespace {

double sq(double x) { return x * x; }

// Distance from point p to segment [a, b].
double point_segment_distance(const PlanarPoint& p, const PlanarPoint& a,
                              const PlanarPoint& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  }
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

}  // namespace

BoundResult bound_rectangle(double ell, double w, unsigned k) {
  BoundResult r;
  r.formula = "rectangle";
  if (!(ell > 0.0) || !(w > 0.0)) {
    r.hypotheses_ok = false;
    r.hypothesis_report = "rectangle sides must be positive";
    return r;
  }
  r.value = 2.0 * sq(kPi) * sq(static_cast<double>(k)) * w / sq(ell);
  return r;
}

BoundResult bound_polar_rectangle(const PolarRectangle& s, unsigned k) {
  BoundResult r;
  r.formula = "polar_rectangle";
  if (!(s.r2 > s.r1) || s.r1 < 0.0 || !(s.alpha > 0.0)) {
    r.hypotheses_ok = false;
    r.hypothesis_report = "need 0 <= r1 < r2 and alpha > 0";
    return r;
  }
  const double radial = s.radial_length();
  r.value = s.alpha * sq(kPi) * sq(static_cast<double>(k)) / radial *
            (1.0 + 2.0 * s.r1 / radial);
  return r;
}

BoundResult bound_passage(PassageShape shape, double ell, double w, unsigned k) {
  BoundResult r;
  const double k2 = sq(static_cast<double>(k));
  const double pi3 = kPi * kPi * kPi;
  if (shape == PassageShape::kQuadrilateral) {
    r.formula = "passage_quadrilateral";
    if (!(ell > 3.0 * w) || !(w > 0.0)) {
      r.hypotheses_ok = false;
      r.hypothesis_report = "need 0 < 3w < l";
      return r;
    }
    r.value = 2.0 * k2 * pi3 * w / sq(ell - 3.0 * w);
  } else {
    r.formula = "passage_triangle";
    if (!(w > 0.0) || !(w < ell / 2.0)) {
      r.hypotheses_ok = false;
      r.hypothesis_report = "need 0 < w < l/2";
      return r;
    }
    r.value = k2 * pi3 * w / sq(ell - 2.0 * w);
  }
  return r;
}

BoundResult bound_triangle_min_angle(double alpha, double perimeter, unsigned k) {
  BoundResult r;
  r.formula = "triangle_min_angle";
  if (!(alpha > 0.0) || alpha > kPi / 3.0 + kGeomTol || !(perimeter > 0.0)) {
    r.hypotheses_ok = false;
    r.hypothesis_report = "alpha must be the smallest angle (<= pi/3)";
    return r;
  }
  r.value = (8.0 * std::sqrt(3.0) / 3.0) * sq(kPi) *
            sq(static_cast<double>(k)) * alpha / perimeter;
  return r;
}

BoundResult bound_isosceles_even(double alpha, unsigned k) {
  BoundResult r;
  r.formula = "isosceles_even";
  if (!(alpha > 0.0) || alpha > kPi / 3.0 + kGeomTol) {
    r.hypotheses_ok = false;
    r.hypothesis_report = "base angles must satisfy 0 < alpha <= pi/3";
    return r;
  }
  // Bounds are on sigma_{2k} * perimeter.
  const double k2 = sq(static_cast<double>(k));
  r.sharp_value =
      sq(kPi) * k2 * 2.0 * (1.0 + std::cos(alpha)) / std::cos(alpha) * alpha;
  r.value = 6.0 * sq(kPi) * k2 * alpha;
  return r;
}

BoundResult bound_thin_ngon(double ell_star, double w_star, unsigned n,
                            unsigned k) {
  BoundResult r;
  r.formula = "thin_ngon";
  if (n < 3 || !(w_star > 0.0) ||
      !(w_star < ell_star / (3.0 * (n - 1)))) {
    r.hypotheses_ok = false;
    r.hypothesis_report = "need w* < l*/(3(n-1))";
    return r;
  }
  const double nm1 = static_cast<double>(n - 1);
  r.value = 2.0 * sq(static_cast<double>(k)) * sq(nm1) * kPi * kPi * kPi *
            w_star / sq(ell_star - 3.0 * nm1 * w_star);
  return r;
}

ConvexNgonConstants convex_ngon_constants(unsigned n) {
  ConvexNgonConstants c;
  const double beta = 0.98;
  // delta_n = beta/(3n-2) exactly would zero the denominator below; back off
  // a hair so C_n stays finite.
  const double m = 3.0 * n - 2.0;
  c.delta_n = beta / m - 1e-12;
  const double inner = 0.5 - m * c.delta_n / (2.0 * beta);
  c.c_n = sq(static_cast<double>(n - 1)) * kPi * kPi * kPi /
          (beta * sq(inner));
  return c;
}

BoundResult bound_convex_ngon(unsigned n, double alpha_min, double perimeter,
                              unsigned k) {
  BoundResult r;
  r.formula = "convex_ngon_small_angle";
  const ConvexNgonConstants c = convex_ngon_constants(n);
  if (n < 3 || !(alpha_min > 0.0) || !(alpha_min < c.delta_n) ||
      !(perimeter > 0.0)) {
    std::ostringstream os;
    os << "need 0 < alpha_min < delta_n = " << c.delta_n;
    r.hypotheses_ok = false;
    r.hypothesis_report = os.str();
    return r;
  }
  r.value = c.c_n * sq(static_cast<double>(k)) * alpha_min / perimeter;
  return r;
}

double angle_lower_bound(unsigned n, double sigma_k, double perimeter,
                         unsigned k) {
  const ConvexNgonConstants c = convex_ngon_constants(n);
  return std::min(c.delta_n,
                  sigma_k * perimeter / (c.c_n * sq(static_cast<double>(k))));
}

std::vector<BoundResult> bounds_for_polygon(const ConvexPolygon& poly,
                                            unsigned k) {
  std::vector<BoundResult> out;
  const BoundaryData data = extract_boundary_data(poly);
  const std::size_t n = poly.vertices.size();

  // Disk sector at each vertex: radius limited by the adjacent edge lengths
  // and the distance to every non-adjacent edge, so that the sector stays
  // inside the polygon with its straight sides on the boundary.
  for (std::size_t i = 0; i < n; ++i) {
    const PlanarPoint& v = poly.vertices[i];
    // Edge j runs from vertex j-1 to vertex j; edges i and i+1 meet at v.
    double radius = std::min(data.lengths[i], data.lengths[(i + 1) % n]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || j == (i + 1) % n) continue;
      const PlanarPoint& a = poly.vertices[(j + n - 1) % n];
      const PlanarPoint& b = poly.vertices[j];
      radius = std::min(radius, point_segment_distance(v, a, b));
    }
    if (radius <= 0.0) continue;
    PolarRectangle sector;
    sector.r1 = 0.0;
    sector.r2 = radius;
    sector.alpha = data.angles[i];
    BoundResult r = bound_polar_rectangle(sector, k);
    std::ostringstream os;
    os << "sector_at_vertex_" << i;
    r.formula = os.str();
    out.push_back(r);
  }

  if (n == 3) {
    const double amin =
        *std::min_element(data.angles.begin(), data.angles.end());
    BoundResult r = bound_triangle_min_angle(amin, data.perimeter(), k);
    if (r.hypotheses_ok) out.push_back(r);
  }

  // Bounding box aligned with the diameter direction; if the polygon is thin
  // enough the n-gon passage bound applies.
  {
    double best = 0.0;
    std::size_t pa = 0, pb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = std::hypot(poly.vertices[i].x - poly.vertices[j].x,
                                    poly.vertices[i].y - poly.vertices[j].y);
        if (d > best) {
          best = d;
          pa = i;
          pb = j;
        }
      }
    }
    if (best > 0.0) {
      const double ux = (poly.vertices[pb].x - poly.vertices[pa].x) / best;
      const double uy = (poly.vertices[pb].y - poly.vertices[pa].y) / best;
      double lo_t = std::numeric_limits<double>::infinity();
      double hi_t = -lo_t;
      double lo_s = lo_t;
      double hi_s = -lo_t;
      for (const PlanarPoint& v : poly.vertices) {
        const double t = v.x * ux + v.y * uy;
        const double s = -v.x * uy + v.y * ux;
        lo_t = std::min(lo_t, t);
        hi_t = std::max(hi_t, t);
        lo_s = std::min(lo_s, s);
        hi_s = std::max(hi_s, s);
      }
      BoundResult r = bound_thin_ngon(hi_t - lo_t, hi_s - lo_s,
                                      static_cast<unsigned>(n), k);
      if (r.hypotheses_ok) out.push_back(r);
    }
  }

  {
    const double amin =
        *std::min_element(data.angles.begin(), data.angles.end());
    BoundResult r = bound_convex_ngon(static_cast<unsigned>(n), amin,
                                      data.perimeter(), k);
    if (r.hypotheses_ok) out.push_back(r);
  }

  return out;
}

}  // namespace steklov
