#include "steklov/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace steklov {

namespace {

double wrap_index_dist(const PlanarPoint& a, const PlanarPoint& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

// Edge directions (radians) induced by the angle vector, with the edge
// leaving vertex 0 pointing along +x.  dir[e] is the direction of edge e,
// where edge e ends at vertex e.
std::vector<double> edge_directions(const std::vector<double>& angles) {
  const std::size_t n = angles.size();
  std::vector<double> dir(n, 0.0);
  double th = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    dir[i % n] = th;
    th += kPi - angles[i % n];
  }
  return dir;
}

double clamped_acos(double c) {
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// Interior angles of a triangle with side lengths (a, b, c); returns the
// angle opposite each side.
std::array<double, 3> triangle_angles(double a, double b, double c) {
  const double A = clamped_acos((b * b + c * c - a * a) / (2.0 * b * c));
  const double B = clamped_acos((a * a + c * c - b * b) / (2.0 * a * c));
  return {A, B, kPi - A - B};
}

}  // namespace

double BoundaryData::perimeter() const {
  return std::accumulate(lengths.begin(), lengths.end(), 0.0);
}

std::size_t PartialBoundaryData::blank_count() const {
  std::size_t k = 0;
  for (const auto& a : angles) {
    if (!a.has_value()) ++k;
  }
  return k;
}

ConvexPolygon make_convex_polygon(std::vector<PlanarPoint> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  double perim = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = vertices[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw GeometryError("non-finite coordinate at vertex " + std::to_string(i));
    }
    perim += wrap_index_dist(vertices[(i + n - 1) % n], p);
  }
  const double tol = kGeomTol * std::max(perim, 1.0);

  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = vertices[i];
    const auto& q = vertices[(i + 1) % n];
    area2 += p.x * q.y - q.x * p.y;
  }
  if (area2 <= tol * perim) {
    throw GeometryError("vertices are not in counterclockwise order");
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& prev = vertices[(i + n - 1) % n];
    const auto& cur = vertices[i];
    const auto& next = vertices[(i + 1) % n];
    const double ix = cur.x - prev.x, iy = cur.y - prev.y;
    const double ox = next.x - cur.x, oy = next.y - cur.y;
    const double cross = ix * oy - iy * ox;
    const double li = std::hypot(ix, iy), lo = std::hypot(ox, oy);
    if (li <= tol || lo <= tol) {
      throw GeometryError("zero-length edge at vertex " + std::to_string(i));
    }
    if (cross <= tol * li * lo) {
      std::ostringstream msg;
      msg << "vertex " << i << " is " << (cross < -tol * li * lo ? "reflex" : "collinear")
          << "; polygon is not strictly convex";
      throw GeometryError(msg.str());
    }
  }
  return ConvexPolygon{std::move(vertices)};
}

double closure_residual(const std::vector<double>& lengths,
                        const std::vector<double>& angles) {
  const auto dir = edge_directions(angles);
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    sx += lengths[i] * std::cos(dir[i]);
    sy += lengths[i] * std::sin(dir[i]);
  }
  return std::hypot(sx, sy);
}

void validate_boundary_data(const BoundaryData& data, double tol) {
  const std::size_t n = data.size();
  if (n < 3) throw GeometryError("boundary data needs at least 3 edges");
  if (data.angles.size() != n) {
    throw GeometryError("length/angle vectors disagree in size");
  }
  const double perim = data.perimeter();
  const double scaled = tol * std::max(perim, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(data.lengths[i] > scaled)) {
      throw GeometryError("non-positive edge length at index " + std::to_string(i));
    }
    if (!(data.angles[i] > 0.0) || !(data.angles[i] < kPi)) {
      throw GeometryError("non-convex data: angle " + std::to_string(i) +
                          " outside (0, pi)");
    }
  }
  const double angle_sum = std::accumulate(data.angles.begin(), data.angles.end(), 0.0);
  if (std::abs(angle_sum - (static_cast<double>(n) - 2.0) * kPi) > 1e4 * scaled) {
    throw GeometryError("non-convex data: angle sum differs from (n-2)pi");
  }
  if (closure_residual(data.lengths, data.angles) > 1e4 * scaled) {
    throw GeometryError("non-closing data: edge path does not close");
  }
}

BoundaryData extract_boundary_data(const ConvexPolygon& poly) {
  // make_convex_polygon has already rejected reflex/collinear vertices.
  const std::size_t n = poly.vertices.size();
  BoundaryData data;
  data.lengths.resize(n);
  data.angles.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& prev = poly.vertices[(i + n - 1) % n];
    const auto& cur = poly.vertices[i];
    const auto& next = poly.vertices[(i + 1) % n];
    data.lengths[i] = wrap_index_dist(prev, cur);
    const double ix = cur.x - prev.x, iy = cur.y - prev.y;
    const double ox = next.x - cur.x, oy = next.y - cur.y;
    const double turn = std::atan2(ix * oy - iy * ox, ix * ox + iy * oy);
    data.angles[i] = kPi - turn;
  }
  return data;
}

ConvexPolygon build_polygon(const BoundaryData& data) {
  validate_boundary_data(data);
  const std::size_t n = data.size();
  const auto dir = edge_directions(data.angles);
  std::vector<PlanarPoint> verts(n);
  verts[0] = PlanarPoint{0.0, 0.0};
  for (std::size_t i = 1; i < n; ++i) {
    verts[i].x = verts[i - 1].x + data.lengths[i] * std::cos(dir[i]);
    verts[i].y = verts[i - 1].y + data.lengths[i] * std::sin(dir[i]);
  }
  return make_convex_polygon(std::move(verts));
}

BoundaryData relabel(const BoundaryData& data, const DihedralLabeling& g) {
  const std::size_t n = data.size();
  BoundaryData out;
  out.lengths.resize(n);
  out.angles.resize(n);
  const bool exact = data.has_exact();
  if (exact) {
    out.lengths_exact.resize(n);
    out.angles_pi_exact.resize(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t li, ai;
    if (!g.reflected) {
      li = (i + g.offset) % n;
      ai = li;
    } else {
      // Reversed traversal: pair i becomes (l_{n-1-i}, a_{n-2-i}).
      li = (n - 1 - i + g.offset) % n;
      ai = (2 * n - 2 - i + g.offset) % n;
    }
    out.lengths[i] = data.lengths[li];
    out.angles[i] = data.angles[ai];
    if (exact) {
      out.lengths_exact[i] = data.lengths_exact[li];
      out.angles_pi_exact[i] = data.angles_pi_exact[ai];
    }
  }
  return out;
}

bool congruent(const BoundaryData& a, const BoundaryData& b, double tol) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  for (int refl = 0; refl < 2; ++refl) {
    for (std::size_t off = 0; off < n; ++off) {
      const BoundaryData r = relabel(b, DihedralLabeling{off, refl != 0});
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        ok = std::abs(a.lengths[i] - r.lengths[i]) <= tol &&
             std::abs(a.angles[i] - r.angles[i]) <= tol;
      }
      if (ok) return true;
    }
  }
  return false;
}

namespace {

struct PartialSolveState {
  std::vector<double> lengths;
  std::vector<std::optional<double>> angles;
};

// Recursive triangle-peeling step.  Assumes the angle at the last vertex
// (index n-1) is known.
void solve_peeling(PartialSolveState& s) {
  const std::size_t n = s.lengths.size();
  if (n == 3) {
    // Side a_i is opposite vertex i.  Vertex i lies between edges i and i+1,
    // so the side opposite vertex i is edge i+2 (mod 3).
    const auto abc = triangle_angles(s.lengths[2], s.lengths[0], s.lengths[1]);
    // abc[0] is opposite lengths[2], i.e. the angle at vertex 0.
    if (s.lengths[0] + s.lengths[1] <= s.lengths[2] ||
        s.lengths[1] + s.lengths[2] <= s.lengths[0] ||
        s.lengths[2] + s.lengths[0] <= s.lengths[1]) {
      throw GeometryError("no polygon realizes data: triangle inequality fails");
    }
    for (std::size_t i = 0; i < 3; ++i) {
      const double computed = abc[(i + 0) % 3];
      if (s.angles[i].has_value() &&
          std::abs(*s.angles[i] - computed) > 1e-6 * kPi) {
        throw GeometryError("no polygon realizes data: inconsistent known angle");
      }
      s.angles[i] = computed;
    }
    return;
  }
  if (!s.angles[n - 1].has_value()) {
    // Rotate the cyclic data so some known angle sits at the last position;
    // with at most three blanks and n >= 4 one always exists.
    std::size_t rot = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (s.angles[i].has_value()) {
        rot = (i + 1) % n;
        break;
      }
    }
    if (rot == n) {
      throw GeometryError("internal: peeling vertex has no known angle");
    }
    PartialSolveState turned;
    turned.lengths.resize(n);
    turned.angles.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      turned.lengths[i] = s.lengths[(i + rot) % n];
      turned.angles[i] = s.angles[(i + rot) % n];
    }
    solve_peeling(turned);
    for (std::size_t i = 0; i < n; ++i) {
      s.angles[(i + rot) % n] = turned.angles[i];
    }
    return;
  }
  // Cut off the triangle (v_{n-2}, v_{n-1}, v_0) at the known vertex.
  const double a = s.lengths[n - 1];  // v_{n-2} -> v_{n-1}
  const double b = s.lengths[0];      // v_{n-1} -> v_0
  const double A = *s.angles[n - 1];
  const double c2 = a * a + b * b - 2.0 * a * b * std::cos(A);
  if (!(c2 > 0.0)) {
    throw GeometryError("no polygon realizes data: degenerate peel chord");
  }
  const double c = std::sqrt(c2);
  const double t_prev = clamped_acos((a * a + c2 - b * b) / (2.0 * a * c));
  const double t_next = kPi - A - t_prev;

  PartialSolveState inner;
  inner.lengths.assign(s.lengths.begin(), s.lengths.end() - 1);
  inner.lengths[0] = c;
  inner.angles.assign(s.angles.begin(), s.angles.end() - 1);
  if (inner.angles[0].has_value()) *inner.angles[0] -= t_next;
  if (inner.angles[n - 2].has_value()) *inner.angles[n - 2] -= t_prev;
  solve_peeling(inner);
  for (std::size_t i = 1; i + 1 < n - 1; ++i) s.angles[i] = inner.angles[i];
  s.angles[0] = *inner.angles[0] + t_next;
  s.angles[n - 2] = *inner.angles[n - 2] + t_prev;
}

}  // namespace

BoundaryData reconstruct_missing_angles(const PartialBoundaryData& partial,
                                        double tol) {
  const std::size_t n = partial.size();
  if (n < 3 || partial.angles.size() != n) {
    throw GeometryError("partial data needs matching lengths and angles, n >= 3");
  }
  const std::size_t blanks = partial.blank_count();
  if (blanks > 3) {
    throw std::invalid_argument("at most 3 blank angles are supported");
  }
  BoundaryData out;
  out.lengths = partial.lengths;
  out.angles.resize(n);
  if (blanks == 0) {
    for (std::size_t i = 0; i < n; ++i) out.angles[i] = *partial.angles[i];
    validate_boundary_data(out, tol);
    return out;
  }

  // Rotate so that a known angle sits at the last position; the triangle
  // peel then always happens at a known vertex.
  std::size_t rot = 0;
  if (n > 3) {
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (partial.angles[(i + n - 1) % n].has_value()) {
        rot = i;
        found = true;
        break;
      }
    }
    if (!found) {
      throw GeometryError("no known angle available for peeling");
    }
  }
  PartialSolveState s;
  s.lengths.resize(n);
  s.angles.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.lengths[i] = partial.lengths[(i + rot) % n];
    s.angles[i] = partial.angles[(i + rot) % n];
  }
  solve_peeling(s);
  for (std::size_t i = 0; i < n; ++i) {
    out.angles[(i + rot) % n] = *s.angles[i];
  }
  validate_boundary_data(out, 1e3 * tol);
  return out;
}

BoundaryData quad_from_asa_perimeter(const std::vector<double>& angles,
                                     std::size_t known_side_index,
                                     double known_side, double perimeter) {
  if (angles.size() != 4) throw GeometryError("need exactly 4 angles");
  if (known_side_index >= 4) throw GeometryError("side index out of range");
  if (!(known_side > 0.0) || !(perimeter > known_side)) {
    throw GeometryError("side and perimeter must be positive with P > side");
  }
  const double angle_sum = std::accumulate(angles.begin(), angles.end(), 0.0);
  if (std::abs(angle_sum - 2.0 * kPi) > 1e-8) {
    throw GeometryError("quadrilateral angles must sum to 2pi");
  }
  for (double a : angles) {
    if (!(a > 0.0) || !(a < kPi)) throw GeometryError("non-convex angle");
  }

  // Rotate so the known side is edge 1 in the local frame.
  std::vector<double> A(4);
  // Local edge i is original edge (known_side_index + i - 1): the known
  // side becomes edge 1 of the local frame.
  for (std::size_t i = 0; i < 4; ++i)
    A[i] = angles[(i + known_side_index + 3) % 4];
  const auto dir = edge_directions(A);
  Eigen::Matrix<double, 2, 3> M;
  for (int j = 0; j < 3; ++j) {
    // Unknowns are edges 2, 3, 4 (indices 2, 3, 0 of dir).
    const int e = (j + 2) % 4;
    M(0, j) = std::cos(dir[e]);
    M(1, j) = std::sin(dir[e]);
  }
  Eigen::Vector2d rhs(-known_side * std::cos(dir[1]), -known_side * std::sin(dir[1]));
  // Particular solution plus the 1-dimensional kernel: the slide family.
  Eigen::Vector3d x0 = M.bdcSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(rhs);
  Eigen::FullPivLU<Eigen::Matrix<double, 2, 3>> lu(M);
  Eigen::Vector3d z = lu.kernel().col(0);
  if ((M * x0 - rhs).norm() > 1e-9 * (known_side + perimeter)) {
    throw GeometryError("no quadrilateral realizes the angle data");
  }
  const double slope = z.sum();
  if (std::abs(slope) < 1e-12) {
    throw GeometryError("degenerate slide family: perimeter not monotone");
  }
  if (slope < 0.0) z = -z;  // orient so perimeter increases with t

  // Feasible t-interval where all three unknown lengths stay positive.
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 3; ++j) {
    if (z[j] > 1e-15) {
      t_lo = std::max(t_lo, -x0[j] / z[j]);
    } else if (z[j] < -1e-15) {
      t_hi = std::min(t_hi, -x0[j] / z[j]);
    } else if (x0[j] <= 0.0) {
      throw GeometryError("no convex quadrilateral realizes the data");
    }
  }
  if (!(t_lo < t_hi)) {
    throw GeometryError("no convex quadrilateral realizes the data");
  }
  auto perim_at = [&](double t) { return known_side + (x0 + t * z).sum(); };
  const double inf_perim =
      std::isfinite(t_lo) ? perim_at(t_lo) : -std::numeric_limits<double>::infinity();
  if (perimeter <= inf_perim) {
    throw GeometryError("perimeter unreachable: below the infimum of the family");
  }
  // Monotone bisection for the slide parameter.
  double lo = std::isfinite(t_lo) ? t_lo : -1.0;
  while (!std::isfinite(t_lo) && perim_at(lo) > perimeter) lo *= 2.0;
  double hi = std::isfinite(t_hi) ? t_hi : std::max(1.0, lo + 1.0);
  while (perim_at(hi) < perimeter) {
    if (std::isfinite(t_hi)) {
      throw GeometryError("perimeter unreachable: above the supremum of the family");
    }
    hi *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (perim_at(mid) < perimeter ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  const Eigen::Vector3d x = x0 + t * z;

  BoundaryData local;
  local.lengths = {x[2], known_side, x[0], x[1]};
  local.angles = A;  // A[i] at vertex i, edge 1 = known side
  // Rotate labels back so the known side regains its original index.
  BoundaryData out;
  out.lengths.resize(4);
  out.angles.resize(4);
  for (std::size_t i = 0; i < 4; ++i) {
    out.lengths[(i + known_side_index + 3) % 4] = local.lengths[i];
    out.angles[(i + known_side_index + 3) % 4] = local.angles[i];
  }
  validate_boundary_data(out, 1e-7);
  return out;
}

BoundaryData OneParamFamily::member(double x) const {
  const std::size_t n = base.size();
  BoundaryData out = base;
  const double y = ratio * x;
  out.lengths[split_a] += x;
  out.lengths[(split_a + 1) % n] -= x;
  out.lengths[split_b] += y;
  out.lengths[(split_b + 1) % n] -= y;
  return out;
}

EdgeSplitResult edge_split_solve(const EdgeSplitData& data, double tol) {
  const std::size_t n = data.angles.size();
  if (n < 4) throw GeometryError("edge split needs n >= 4");
  const std::size_t a = data.split_a % n;
  const std::size_t b = data.split_b % n;
  const std::size_t a1 = (a + 1) % n, b1 = (b + 1) % n;
  if (a == b || a1 == b || b1 == a) {
    throw GeometryError("split vertices must be non-adjacent");
  }
  if (data.other_lengths.size() != n - 4) {
    throw GeometryError("wrong number of remaining lengths");
  }

  const auto dir = edge_directions(data.angles);
  auto unit = [&](std::size_t e) {
    return Eigen::Vector2d(std::cos(dir[e]), std::sin(dir[e]));
  };

  std::vector<double> lengths(n, 0.0);
  {
    std::size_t k = 0;
    for (std::size_t e = 0; e < n; ++e) {
      if (e == a || e == a1 || e == b || e == b1) continue;
      lengths[e] = data.other_lengths[k++];
    }
  }
  Eigen::Vector2d cvec = Eigen::Vector2d::Zero();
  for (std::size_t e = 0; e < n; ++e) {
    if (e == a || e == a1 || e == b || e == b1) continue;
    cvec += lengths[e] * unit(e);
  }

  const Eigen::Vector2d da = unit(a) - unit(a1);
  const Eigen::Vector2d db = unit(b) - unit(b1);
  const Eigen::Vector2d rhs = -cvec - data.sum_a * unit(a1) - data.sum_b * unit(b1);

  EdgeSplitResult res;
  // Total turning of the two boundary paths between the split vertices.
  for (std::size_t v = a1; v != b; v = (v + 1) % n) res.psi += kPi - data.angles[v];
  for (std::size_t v = b1; v != a; v = (v + 1) % n) res.phi += kPi - data.angles[v];

  const double det = da.x() * db.y() - da.y() * db.x();
  const double scale = std::max(1.0, data.sum_a + data.sum_b);
  const bool parallel = std::abs(det) < 1e3 * tol;
  // The turning-sum criterion must agree with the bisector cross product.
  if (parallel != (std::abs(res.psi - res.phi) < 1e3 * tol)) {
    throw GeometryError("psi/phi criterion disagrees with bisector geometry");
  }

  auto assemble = [&](double la, double lb) {
    BoundaryData out;
    out.lengths = lengths;
    out.lengths[a] = la;
    out.lengths[a1] = data.sum_a - la;
    out.lengths[b] = lb;
    out.lengths[b1] = data.sum_b - lb;
    out.angles = data.angles;
    return out;
  };

  if (!parallel) {
    Eigen::Matrix2d M;
    M.col(0) = da;
    M.col(1) = db;
    const Eigen::Vector2d sol = M.fullPivLu().solve(rhs);
    const double la = sol[0], lb = sol[1];
    if (!(la > 0.0) || !(la < data.sum_a) || !(lb > 0.0) || !(lb < data.sum_b)) {
      throw GeometryError("data realizes no convex polygon");
    }
    res.unique = true;
    res.solution = assemble(la, lb);
    validate_boundary_data(res.solution, 1e3 * tol);
    return res;
  }

  // Degenerate family: the system is rank one along the common bisector
  // direction.
  const Eigen::Vector2d dhat = da.normalized();
  const double g = dhat.dot(db);
  const double r = dhat.dot(rhs);
  if ((rhs - r * dhat).norm() > 1e-6 * scale) {
    throw GeometryError("data realizes no convex polygon");
  }
  double la, lb;
  if (data.seed_la && data.seed_lb) {
    la = *data.seed_la;
    lb = *data.seed_lb;
  } else {
    // Solutions form a line la*|da| + lb*g = r; pick the midpoint of its
    // intersection with the positivity box.
    const double na = da.norm();
    double s_lo = 0.0, s_hi = data.sum_a;
    if (std::abs(g) > 1e-15) {
      const double v0 = r / g, slope = -na / g;  // lb = v0 + slope * la
      auto lb_at = [&](double s) { return v0 + slope * s; };
      // Clip so lb stays in (0, sum_b).
      double c_lo = s_lo, c_hi = s_hi;
      if (std::abs(slope) > 1e-15) {
        const double sA = (0.0 - v0) / slope, sB = (data.sum_b - v0) / slope;
        c_lo = std::max(c_lo, std::min(sA, sB));
        c_hi = std::min(c_hi, std::max(sA, sB));
      } else if (lb_at(0.0) <= 0.0 || lb_at(0.0) >= data.sum_b) {
        throw GeometryError("data realizes no convex polygon");
      }
      if (!(c_lo < c_hi)) throw GeometryError("data realizes no convex polygon");
      la = 0.5 * (c_lo + c_hi);
      lb = lb_at(la);
    } else {
      la = r / na;
      lb = 0.5 * data.sum_b;
      if (!(la > 0.0) || !(la < data.sum_a)) {
        throw GeometryError("data realizes no convex polygon");
      }
    }
  }
  OneParamFamily fam;
  fam.base = assemble(la, lb);
  validate_boundary_data(fam.base, 1e3 * tol);
  fam.split_a = a;
  fam.split_b = b;
  // x (u_a - u_{a1}) = y (u_{b1} - u_b)  =>  y = -|da| / (dhat . db) * x.
  fam.ratio = -da.norm() / g;
  double lo = -la, hi = data.sum_a - la;
  if (std::abs(fam.ratio) > 1e-15) {
    const double yA = -lb / fam.ratio, yB = (data.sum_b - lb) / fam.ratio;
    lo = std::max(lo, std::min(yA, yB));
    hi = std::min(hi, std::max(yA, yB));
  }
  fam.x_min = lo;
  fam.x_max = hi;
  res.unique = false;
  res.family = fam;
  return res;
}

}  // namespace steklov
