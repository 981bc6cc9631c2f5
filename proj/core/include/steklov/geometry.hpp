#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "steklov/rational.hpp"

namespace steklov {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Geometric predicate tolerance, scaled by the perimeter of the polygon at
/// hand before use.
inline constexpr double kGeomTol = 1e-9;

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Simple convex polygon with counterclockwise vertex order.  Construct via
/// make_convex_polygon so the invariants (n >= 3, signed area > 0, every
/// interior angle strictly inside (0, pi)) are checked once.
struct ConvexPolygon {
  std::vector<PlanarPoint> vertices;
};

/// Thrown when input data fails a geometric validity check.
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

ConvexPolygon make_convex_polygon(std::vector<PlanarPoint> vertices);

/// Cyclic edge-length / interior-angle data of a convex polygon.
///
/// Indexing convention (0-based version of the usual cyclic labeling):
/// edge i runs from vertex i-1 to vertex i, so angles[i] sits between
/// lengths[i] and lengths[(i+1) % n].
struct BoundaryData {
  std::vector<double> lengths;
  std::vector<double> angles;

  /// Optional exact representations carried alongside the doubles.  When
  /// present, lengths_exact[i] == lengths[i] and angles[i] ==
  /// angles_pi_exact[i] * pi up to rounding.
  std::vector<Rational> lengths_exact;
  std::vector<Rational> angles_pi_exact;

  std::size_t size() const { return lengths.size(); }
  bool has_exact() const {
    return !lengths_exact.empty() && !angles_pi_exact.empty();
  }
  double perimeter() const;
};

/// Like BoundaryData but with up to three angles unknown.
struct PartialBoundaryData {
  std::vector<double> lengths;
  std::vector<std::optional<double>> angles;

  std::size_t size() const { return lengths.size(); }
  std::size_t blank_count() const;
};

/// One of the 2n relabelings of the cyclic boundary data.
struct DihedralLabeling {
  std::size_t offset = 0;
  bool reflected = false;
};

/// Validates the chain of BoundaryData invariants: positive lengths, angles
/// in (0, pi), angle sum (n-2)pi, and closure of the edge path.  Throws
/// GeometryError on violation.
void validate_boundary_data(const BoundaryData& data, double tol = kGeomTol);

/// Residual of the closed-path condition sum_j l_j u_j = 0 (Euclidean norm).
double closure_residual(const std::vector<double>& lengths,
                        const std::vector<double>& angles);

BoundaryData extract_boundary_data(const ConvexPolygon& poly);

/// Inverse of extraction: canonical placement puts vertex 0 at the origin
/// with the following edge along +x.
ConvexPolygon build_polygon(const BoundaryData& data);

/// Applies a dihedral relabeling to the cyclic data.
BoundaryData relabel(const BoundaryData& data, const DihedralLabeling& g);

/// True iff some dihedral relabeling maps the data of a onto b entrywise
/// within tol (absolute, in the units of the inputs).
bool congruent(const BoundaryData& a, const BoundaryData& b, double tol = 1e-8);

/// Completes up to three blank angles from the full length vector and the
/// remaining angles, by iteratively cutting off the triangle at a vertex
/// with known angle and recursing on the (n-1)-gon.  The completion is
/// unique when it exists.
BoundaryData reconstruct_missing_angles(const PartialBoundaryData& partial,
                                        double tol = kGeomTol);

/// Unique convex quadrilateral with the given four interior angles (cyclic,
/// summing to 2pi), one known side, and prescribed perimeter.  The solver
/// slides the side opposite the known one along its parallel family; the
/// perimeter is strictly monotone in the slide parameter.
BoundaryData quad_from_asa_perimeter(const std::vector<double>& angles,
                                     std::size_t known_side_index,
                                     double known_side, double perimeter);

/// Input of the split-edge linear system: all angles, the two length sums
/// h = l_1 + l_2 and k = l_m + l_{m+1} (0-based: edges split_a, split_a+1
/// and split_b, split_b+1), and the remaining individual lengths.
/// seed_* give a known solution used as the base point of a degenerate
/// one-parameter family.
struct EdgeSplitData {
  std::vector<double> angles;
  std::size_t split_a = 1;      // first edge of the first split pair
  std::size_t split_b = 3;      // first edge of the second split pair
  double sum_a = 0.0;           // h
  double sum_b = 0.0;           // k
  std::vector<double> other_lengths;  // lengths of edges not in either pair,
                                      // in increasing edge-index order
  std::optional<double> seed_la;
  std::optional<double> seed_lb;
};

struct OneParamFamily {
  BoundaryData base;          // the x = 0 member
  double ratio = 0.0;         // y = ratio * x
  double x_min = 0.0;         // open interval keeping all lengths positive
  double x_max = 0.0;
  std::size_t split_a = 0;
  std::size_t split_b = 0;

  BoundaryData member(double x) const;
};

struct EdgeSplitResult {
  bool unique = false;
  BoundaryData solution;        // valid when unique
  OneParamFamily family;        // valid when !unique
  double psi = 0.0;             // total turning of the path between the splits
  double phi = 0.0;             // total turning of the complementary path
};

/// Solves the closed-path system for the four hidden lengths.  Unique
/// solution when the bisectors at the two split vertices are not parallel
/// (psi != phi); otherwise returns the one-parameter deformation family.
EdgeSplitResult edge_split_solve(const EdgeSplitData& data,
                                 double tol = kGeomTol);

}  // namespace steklov
