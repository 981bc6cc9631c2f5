#include "steklov/fem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

namespace steklov {

namespace {

struct Tri {
  std::size_t a, b, c;
  bool alive = true;
};

double orient(const PlanarPoint& p, const PlanarPoint& q, const PlanarPoint& r) {
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

// > 0 iff d lies inside the circumcircle of ccw triangle (a, b, c).
double in_circle(const PlanarPoint& a, const PlanarPoint& b,
                 const PlanarPoint& c, const PlanarPoint& d) {
  const double ax = a.x - d.x, ay = a.y - d.y;
  const double bx = b.x - d.x, by = b.y - d.y;
  const double cx = c.x - d.x, cy = c.y - d.y;
  return (ax * ax + ay * ay) * (bx * cy - by * cx) -
         (bx * bx + by * by) * (ax * cy - ay * cx) +
         (cx * cx + cy * cy) * (ax * by - ay * bx);
}

// Incremental Bowyer-Watson Delaunay triangulation.
std::vector<std::array<std::size_t, 3>> delaunay(
    const std::vector<PlanarPoint>& pts) {
  const std::size_t n = pts.size();
  double lo_x = pts[0].x, hi_x = pts[0].x, lo_y = pts[0].y, hi_y = pts[0].y;
  for (const auto& p : pts) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);

  // Work on a symbolically perturbed copy: exactly cocircular quadruples
  // (regular polygons, uniform grids) make the cavity test inconsistent, so
  // each point gets a deterministic index-keyed nudge far below h.  The
  // returned indices refer to the original points.
  std::vector<PlanarPoint> all = pts;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = i * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
    s ^= s >> 30;
    s *= 0xbf58476d1ce4e5b9ull;
    s ^= s >> 27;
    const double u = static_cast<double>(s & 0xffffffu) / double(0x1000000);
    const double v = static_cast<double>((s >> 24) & 0xffffffu) / double(0x1000000);
    all[i].x += span * 1e-9 * (u - 0.5);
    all[i].y += span * 1e-9 * (v - 0.5);
  }
  all.push_back({cx - 30.0 * span, cy - 20.0 * span});
  all.push_back({cx + 30.0 * span, cy - 20.0 * span});
  all.push_back({cx, cy + 30.0 * span});

  std::vector<Tri> tris;
  tris.push_back({n, n + 1, n + 2});

  for (std::size_t i = 0; i < n; ++i) {
    const PlanarPoint& p = all[i];
    // Cavity: triangles whose circumcircle contains p.
    std::vector<std::array<std::size_t, 2>> hole;
    for (auto& t : tris) {
      if (!t.alive) continue;
      if (in_circle(all[t.a], all[t.b], all[t.c], p) > 0.0) {
        t.alive = false;
        const std::array<std::array<std::size_t, 2>, 3> ed = {
            {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}};
        for (const auto& e : ed) {
          // A cavity-boundary edge appears exactly once; interior edges of
          // the cavity appear twice (opposite orientations) and cancel.
          auto rev = std::find_if(hole.begin(), hole.end(),
                                  [&](const std::array<std::size_t, 2>& f) {
                                    return f[0] == e[1] && f[1] == e[0];
                                  });
          if (rev != hole.end()) {
            hole.erase(rev);
          } else {
            hole.push_back(e);
          }
        }
      }
    }
    for (const auto& e : hole) tris.push_back({e[0], e[1], i});
    // Compact occasionally to keep the scan linear-ish.
    if (tris.size() > 4 * n + 64) {
      tris.erase(std::remove_if(tris.begin(), tris.end(),
                                [](const Tri& t) { return !t.alive; }),
                 tris.end());
    }
  }

  std::vector<std::array<std::size_t, 3>> out;
  // Collinear boundary runs can leave exactly-degenerate slivers; drop them.
  const double area_floor = 1e-13 * span * span;
  for (const auto& t : tris) {
    if (!t.alive || t.a >= n || t.b >= n || t.c >= n) continue;
    std::array<std::size_t, 3> tri = {t.a, t.b, t.c};
    if (orient(pts[tri[0]], pts[tri[1]], pts[tri[2]]) < 0.0) {
      std::swap(tri[1], tri[2]);
    }
    if (orient(pts[tri[0]], pts[tri[1]], pts[tri[2]]) <= area_floor) continue;
    out.push_back(tri);
  }
  return out;
}

double point_segment_distance(const PlanarPoint& p, const PlanarPoint& a,
                              const PlanarPoint& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::max(0.0, std::min(1.0, ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2));
  }
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

// Deterministic tie-breaking jitter so grid points are never exactly
// cocircular with the boundary ring.
double jitter(std::size_t i, std::size_t j) {
  std::size_t h = i * 0x9e3779b97f4a7c15ull + j * 0xc2b2ae3d27d4eb4full;
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 32;
  return (static_cast<double>(h % 2048) / 2048.0 - 0.5);
}

}  // namespace

TriangleMesh triangulate(const ConvexPolygon& poly, double h) {
  if (!(h > 0.0)) throw GeometryError("mesh size must be positive");
  const std::size_t nv = poly.vertices.size();

  TriangleMesh mesh;
  // Boundary ring first, counterclockwise, corners included.
  for (std::size_t i = 0; i < nv; ++i) {
    const PlanarPoint& a = poly.vertices[i];
    const PlanarPoint& b = poly.vertices[(i + 1) % nv];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const std::size_t segs = std::max<std::size_t>(1, std::ceil(len / h));
    for (std::size_t s = 0; s < segs; ++s) {
      const double t = static_cast<double>(s) / segs;
      mesh.nodes.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  const std::size_t nb = mesh.nodes.size();

  // Hexagonal interior grid, kept clear of the boundary.
  double lo_x = poly.vertices[0].x, hi_x = lo_x;
  double lo_y = poly.vertices[0].y, hi_y = lo_y;
  for (const auto& v : poly.vertices) {
    lo_x = std::min(lo_x, v.x);
    hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y);
    hi_y = std::max(hi_y, v.y);
  }
  const double row = h * std::sqrt(3.0) / 2.0;
  std::size_t jrow = 0;
  for (double y = lo_y + row; y < hi_y; y += row, ++jrow) {
    const double off = (jrow % 2 == 0) ? 0.0 : h / 2.0;
    std::size_t icol = 0;
    for (double x = lo_x + off; x < hi_x; x += h, ++icol) {
      PlanarPoint p{x + 1e-3 * h * jitter(icol, jrow),
                    y + 1e-3 * h * jitter(jrow, icol + 7)};
      bool inside = true;
      for (std::size_t e = 0; e < nv && inside; ++e) {
        inside = orient(poly.vertices[e], poly.vertices[(e + 1) % nv], p) > 0.0;
      }
      if (!inside) continue;
      double dist = std::numeric_limits<double>::infinity();
      for (std::size_t e = 0; e < nv; ++e) {
        dist = std::min(dist, point_segment_distance(
                                  p, poly.vertices[e], poly.vertices[(e + 1) % nv]));
      }
      if (dist < 0.55 * h) continue;
      mesh.nodes.push_back(p);
    }
  }

  mesh.triangles = delaunay(mesh.nodes);
  if (mesh.triangles.empty()) {
    throw GeometryError("triangulation failed: degenerate polygon");
  }
  for (std::size_t i = 0; i < nb; ++i) {
    mesh.boundary_edges.push_back({i, (i + 1) % nb});
  }
  return mesh;
}

TriangleMesh subdivide(const TriangleMesh& mesh) {
  const std::size_t nb = mesh.boundary_node_count();
  const std::size_t n = mesh.nodes.size();
  TriangleMesh out;
  out.nodes.resize(2 * nb);

  // New boundary ring: old node i -> 2i, midpoint of boundary edge i -> 2i+1.
  std::vector<std::size_t> remap(n);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoint;
  for (std::size_t i = 0; i < nb; ++i) {
    const std::size_t j = (i + 1) % nb;
    out.nodes[2 * i] = mesh.nodes[i];
    out.nodes[2 * i + 1] = {0.5 * (mesh.nodes[i].x + mesh.nodes[j].x),
                            0.5 * (mesh.nodes[i].y + mesh.nodes[j].y)};
    remap[i] = 2 * i;
    midpoint[{std::min(i, j), std::max(i, j)}] = 2 * i + 1;
  }
  for (std::size_t i = nb; i < n; ++i) {
    remap[i] = out.nodes.size();
    out.nodes.push_back(mesh.nodes[i]);
  }

  auto mid = [&](std::size_t a, std::size_t b) {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const std::size_t idx = out.nodes.size();
    out.nodes.push_back({0.5 * (mesh.nodes[a].x + mesh.nodes[b].x),
                         0.5 * (mesh.nodes[a].y + mesh.nodes[b].y)});
    midpoint.emplace(key, idx);
    return idx;
  };

  out.triangles.reserve(4 * mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const std::size_t m01 = mid(t[0], t[1]);
    const std::size_t m12 = mid(t[1], t[2]);
    const std::size_t m20 = mid(t[2], t[0]);
    out.triangles.push_back({remap[t[0]], m01, m20});
    out.triangles.push_back({m01, remap[t[1]], m12});
    out.triangles.push_back({m20, m12, remap[t[2]]});
    out.triangles.push_back({m01, m12, m20});
  }
  for (std::size_t i = 0; i < 2 * nb; ++i) {
    out.boundary_edges.push_back({i, (i + 1) % (2 * nb)});
  }
  return out;
}

AssembledSystem assemble(const TriangleMesh& mesh) {
  const std::size_t n = mesh.nodes.size();
  std::vector<Eigen::Triplet<double>> kt, mt;
  kt.reserve(9 * mesh.triangles.size());

  for (const auto& t : mesh.triangles) {
    const PlanarPoint& p0 = mesh.nodes[t[0]];
    const PlanarPoint& p1 = mesh.nodes[t[1]];
    const PlanarPoint& p2 = mesh.nodes[t[2]];
    const double area2 = orient(p0, p1, p2);
    if (!(area2 > 0.0)) throw GeometryError("degenerate mesh triangle");
    // grad of the P1 hat at vertex i is (b_i, c_i) / area2.
    const double b[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
    const double c[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        kt.emplace_back(t[i], t[j], (b[i] * b[j] + c[i] * c[j]) / (2.0 * area2));
      }
    }
  }

  for (const auto& e : mesh.boundary_edges) {
    const double len = std::hypot(mesh.nodes[e[0]].x - mesh.nodes[e[1]].x,
                                  mesh.nodes[e[0]].y - mesh.nodes[e[1]].y);
    mt.emplace_back(e[0], e[0], len / 3.0);
    mt.emplace_back(e[1], e[1], len / 3.0);
    mt.emplace_back(e[0], e[1], len / 6.0);
    mt.emplace_back(e[1], e[0], len / 6.0);
  }

  AssembledSystem sys;
  sys.K.resize(n, n);
  sys.K.setFromTriplets(kt.begin(), kt.end());
  sys.M.resize(n, n);
  sys.M.setFromTriplets(mt.begin(), mt.end());
  return sys;
}

SteklovSolution solve_steklov(const TriangleMesh& mesh,
                              const AssembledSystem& sys, std::size_t k) {
  const std::size_t n = mesh.nodes.size();
  const std::size_t nb = mesh.boundary_node_count();
  const std::size_t ni = n - nb;

  // Boundary nodes come first by construction of triangulate().
  Eigen::MatrixXd S;
  {
    // Slice the sparse blocks directly; densifying all of K first is
    // quadratic in the interior node count.
    const Eigen::MatrixXd K_bb =
        Eigen::SparseMatrix<double>(sys.K.topLeftCorner(nb, nb));
    if (ni == 0) {
      S = K_bb;
    } else {
      const Eigen::MatrixXd K_bi =
          Eigen::SparseMatrix<double>(sys.K.topRightCorner(nb, ni));
      Eigen::SparseMatrix<double> K_ii =
          sys.K.block(nb, nb, ni, ni);
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K_ii);
      if (ldlt.info() != Eigen::Success) {
        throw GeometryError("interior stiffness block is singular");
      }
      const Eigen::MatrixXd X = ldlt.solve(K_bi.transpose());
      S = K_bb - K_bi * X;
    }
    S = 0.5 * (S + S.transpose()).eval();
  }

  Eigen::MatrixXd M_b =
      Eigen::SparseMatrix<double>(sys.M.topLeftCorner(nb, nb));
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(S, M_b);
  if (eig.info() != Eigen::Success) {
    throw GeometryError("generalized eigensolver failed");
  }

  SteklovSolution sol;
  const std::size_t count = std::min<std::size_t>(k + 1, nb);
  sol.sigmas.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + count);
  if (!sol.sigmas.empty() && std::abs(sol.sigmas[0]) < 1e-9) {
    sol.sigmas[0] = std::max(sol.sigmas[0], 0.0);
  }
  sol.boundary_traces = eig.eigenvectors().leftCols(count);
  return sol;
}

SteklovSolution steklov_spectrum(const BoundaryData& data, double h,
                                 std::size_t k) {
  const ConvexPolygon poly = build_polygon(data);
  const TriangleMesh mesh = triangulate(poly, h);
  SteklovSolution sol = solve_steklov(mesh, assemble(mesh), k);
  sol.mesh_h = h;
  return sol;
}

ExtrapolatedSpectrum refined_spectrum(const BoundaryData& data, double h0,
                                      std::size_t k, unsigned levels) {
  if (levels < 1) throw GeometryError("need at least one refinement level");
  ExtrapolatedSpectrum out;
  // Nested hierarchy: mesh once at h0, then halve by uniform subdivision.
  // Nesting keeps the h^2 error constants comparable between levels, which
  // the extrapolation below relies on.
  TriangleMesh mesh = triangulate(build_polygon(data), h0);
  double h = h0;
  for (unsigned l = 0; l < levels; ++l, h /= 2.0) {
    if (l > 0) mesh = subdivide(mesh);
    out.mesh_h.push_back(h);
    out.sigmas.push_back(solve_steklov(mesh, assemble(mesh), k).sigmas);
  }
  const auto& fine = out.sigmas.back();
  out.extrapolated = fine;
  if (levels >= 3) {
    const auto& s0 = out.sigmas[levels - 3];
    const auto& s1 = out.sigmas[levels - 2];
    for (std::size_t j = 0; j < fine.size(); ++j) {
      if (j >= s0.size() || j >= s1.size()) break;
      const double d1 = s1[j] - s0[j];
      const double d2 = fine[j] - s1[j];
      const double denom = d2 - d1;
      // Aitken limit; fall back to the finest value when the differences
      // have stopped contracting.
      if (std::abs(denom) > 1e-14 && std::abs(d2) < std::abs(d1)) {
        out.extrapolated[j] = fine[j] - d2 * d2 / denom;
      }
    }
  }
  return out;
}

std::string mesh_to_off(const TriangleMesh& mesh) {
  std::ostringstream os;
  os << "OFF\n" << mesh.nodes.size() << " " << mesh.triangles.size() << " 0\n";
  for (const auto& p : mesh.nodes) os << p.x << " " << p.y << " 0\n";
  for (const auto& t : mesh.triangles) {
    os << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  return os.str();
}

}  // namespace steklov
