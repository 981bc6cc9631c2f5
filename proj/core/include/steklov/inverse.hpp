#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "steklov/geometry.hpp"
#include "steklov/rational.hpp"

namespace steklov {

enum class AngleKind { kOdd, kEven, kGeneric };

/// Odd angles are pi/(2j+1), even angles pi/(2m); everything else is
/// generic.  parity is (-1)^j resp. (-1)^m, meaningless for generic angles.
struct AngleClass {
  AngleKind kind = AngleKind::kGeneric;
  unsigned index = 0;  // j for odd, m for even
  int parity = +1;
};

/// Classification tolerance: float mode compares against the nearest pi/k.
AngleClass classify_angle(double alpha, double tol = 1e-9);

/// Exact classification for rational multiples of pi.
AngleClass classify_angle_exact(const Rational& alpha_pi);

enum class AdmissibilityMode { kExact, kFloat };

enum class Verdict { kYes, kNo, kIndeterminate };

struct AdmissibilityReport {
  Verdict admissible = Verdict::kNo;
  Verdict weakly_edge_admissible = Verdict::kNo;
  std::vector<std::string> reasons;
};

/// Admissibility: all 3^n - 1 nontrivial {-1,0,1}-combinations of the edge
/// lengths are nonzero and no angle is odd.  The weak notion runs the same
/// incommensurability test on the reduced polygon's edge lengths.  Exact
/// mode decides exactly on rational inputs; float mode returns
/// kIndeterminate when some combination lands within tol of zero.
AdmissibilityReport admissibility(const BoundaryData& data,
                                  AdmissibilityMode mode,
                                  double tol = kGeomTol);

struct InvariantVector {
  std::vector<double> C;
  std::vector<double> C_abs;
};

InvariantVector invariant_vectors(const BoundaryData& data);

/// Maximal boundary arc between two consecutive even-angle vertices:
/// the edges of the arc in order and the c-values of its interior vertices.
struct ExceptionalComponent {
  std::vector<double> lengths;
  std::vector<double> C;
  bool reversed = false;
};

ExceptionalComponent reverse_component(const ExceptionalComponent& y);

/// Components in cyclic order starting from the first even vertex.  Empty
/// when the polygon has no even angles.
std::vector<ExceptionalComponent> exceptional_components(
    const BoundaryData& data);

struct ReducedPolygon {
  struct Edge {
    double length = 0.0;
    bool curved = false;
  };
  std::vector<Edge> edges;
  std::vector<double> angles;  // at surviving (non-odd) vertices
  bool smooth_domain = false;  // every vertex was odd

  double total_length() const;
};

/// Removes the odd vertices; each maximal run of removed vertices merges its
/// incident edges into one curved edge.  Perimeter is preserved exactly.
ReducedPolygon reduce_polygon(const BoundaryData& data);

/// All alpha in (alpha_min, pi) with |c(alpha)| = s, sorted descending.
/// s = 0 gives the odd angles, s = 1 the even angles; any s in (0,1) has
/// exactly one obtuse preimage.
std::vector<double> inverse_c_preimages(double s, double alpha_min);

/// The unique alpha in (pi/2, pi) with |c(alpha)| = s, for s in (0, 1).
double obtuse_c_preimage(double s);

/// Both transfer branches q/(2kq+1) and q/(2kq-1) that land in (0,1),
/// in exact rational arithmetic; k = 0 returns {q}.
std::vector<Rational> rational_angle_transfer(const Rational& q, long k);

enum class EnumerationVerdict { kFinite, kContinuum, kIndeterminate };

struct CandidateSet {
  std::size_t cap = 0;
  std::vector<BoundaryData> candidates;
  EnumerationVerdict verdict = EnumerationVerdict::kFinite;
  std::optional<OneParamFamily> family;  // attached on a continuum verdict
  std::vector<std::string> notes;
};

/// Candidates isospectral to an admissible target: same lengths and |c|
/// vector up to dihedral relabeling and exceptional-component reversal,
/// with n-3 angles forced obtuse and the remaining three completed by
/// closure; filtered by charpoly equality and deduped by congruence.
/// cap carries the theorem cap for the target's even-angle pattern.
/// angle_floor prunes candidates with any angle below it (0 disables).
CandidateSet enumerate_admissible_candidates(const BoundaryData& target,
                                             double tol = 1e-7,
                                             double angle_floor = 0.0);

/// Candidates for a weakly edge-admissible target with odd angles: the
/// reduced polygon is fixed, odd-angle values are pinned by the angle sum
/// and truncated below by the sigma_k angle floor, and each placement is
/// closed by the split-edge linear system.  A parallel-bisector degeneracy
/// yields a continuum verdict with the one-parameter family attached.
CandidateSet enumerate_weak_candidates(const BoundaryData& target,
                                       double sigma_k, unsigned k,
                                       double tol = 1e-7);

}  // namespace steklov
