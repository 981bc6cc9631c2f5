#include "steklov/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "steklov/bounds.hpp"
#include "steklov/trig_poly.hpp"

namespace steklov {

namespace {

// dir[0] = 0; turning at vertex i is pi - angles[i].
std::vector<double> edge_dirs(const std::vector<double>& angles) {
  const std::size_t n = angles.size();
  std::vector<double> dir(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) dir[i] = dir[i - 1] + kPi - angles[i - 1];
  return dir;
}

std::string sign_word(const std::vector<int>& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ")";
  return os.str();
}

// {-1,0,1}-incommensurability over double lengths.  Exactly-zero sums are
// definite failures; merely-small ones are indeterminate in float mode.
Verdict incommensurable_float(const std::vector<double>& lengths, double tol,
                              std::vector<std::string>& reasons,
                              const std::string& label) {
  const std::size_t n = lengths.size();
  double scale = 0.0;
  for (double l : lengths) scale += l;
  const double eps = tol * std::max(1.0, scale);
  Verdict v = Verdict::kYes;
  std::vector<int> signs(n, -1);
  // Odometer over {-1,0,1}^n; the +-symmetry would halve the work but the
  // counts here are small.
  while (true) {
    bool trivial = true;
    for (int s : signs) {
      if (s != 0) trivial = false;
    }
    if (!trivial) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += signs[i] * lengths[i];
      if (sum == 0.0) {
        reasons.push_back(label + " combination " + sign_word(signs) +
                          " vanishes");
        return Verdict::kNo;
      }
      if (std::abs(sum) <= eps && v == Verdict::kYes) {
        reasons.push_back(label + " combination " + sign_word(signs) +
                          " is within tolerance of zero (indeterminate)");
        v = Verdict::kIndeterminate;
      }
    }
    std::size_t i = 0;
    while (i < n && signs[i] == 1) signs[i++] = -1;
    if (i == n) break;
    ++signs[i];
  }
  return v;
}

Verdict incommensurable_exact(const std::vector<Rational>& lengths,
                              std::vector<std::string>& reasons,
                              const std::string& label) {
  const std::size_t n = lengths.size();
  std::vector<int> signs(n, -1);
  while (true) {
    bool trivial = true;
    for (int s : signs) {
      if (s != 0) trivial = false;
    }
    if (!trivial) {
      Rational sum(0);
      for (std::size_t i = 0; i < n; ++i) sum += Rational(signs[i]) * lengths[i];
      if (sum == Rational(0)) {
        reasons.push_back(label + " combination " + sign_word(signs) +
                          " vanishes");
        return Verdict::kNo;
      }
    }
    std::size_t i = 0;
    while (i < n && signs[i] == 1) signs[i++] = -1;
    if (i == n) break;
    ++signs[i];
  }
  return Verdict::kYes;
}

std::vector<char> odd_flags(const BoundaryData& data, bool exact) {
  std::vector<char> odd(data.size(), 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const AngleClass cls = exact ? classify_angle_exact(data.angles_pi_exact[i])
                                 : classify_angle(data.angles[i]);
    odd[i] = cls.kind == AngleKind::kOdd;
  }
  return odd;
}

// Groups of consecutive edge indices merged by removing the odd vertices.
// Edges i and i+1 share vertex i, so they merge iff vertex i is odd.  Each
// returned group lists edge indices in boundary order; the leading entry of
// group g is the edge following the g-th surviving vertex.
std::vector<std::vector<std::size_t>> reduced_edge_groups(
    const std::vector<char>& odd) {
  const std::size_t n = odd.size();
  std::vector<std::vector<std::size_t>> groups;
  // Find a surviving vertex to anchor the walk.
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!odd[i]) {
      start = i;
      break;
    }
  }
  if (start == n) return groups;  // all vertices odd: smooth domain
  std::vector<std::size_t> cur;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t e = (start + k) % n;  // edge e follows vertex e-1
    cur.push_back(e);
    if (!odd[e % n]) {  // edge e ends at vertex e
      groups.push_back(cur);
      cur.clear();
    }
  }
  return groups;
}

}  // namespace

AngleClass classify_angle(double alpha, double tol) {
  AngleClass out;
  if (!(alpha > 0.0) || !(alpha < kPi)) {
    throw GeometryError("angle must lie in (0, pi)");
  }
  const double k_real = kPi / alpha;
  const long k = std::lround(k_real);
  if (k >= 2 && std::abs(alpha - kPi / static_cast<double>(k)) <= tol) {
    if (k % 2 == 1) {
      out.kind = AngleKind::kOdd;
      out.index = static_cast<unsigned>((k - 1) / 2);
    } else {
      out.kind = AngleKind::kEven;
      out.index = static_cast<unsigned>(k / 2);
    }
    out.parity = out.index % 2 == 0 ? +1 : -1;
  }
  return out;
}

AngleClass classify_angle_exact(const Rational& alpha_pi) {
  AngleClass out;
  if (!(alpha_pi > Rational(0)) || !(alpha_pi < Rational(1))) {
    throw GeometryError("angle must lie in (0, pi)");
  }
  if (alpha_pi.numerator() != 1) return out;
  const auto k = alpha_pi.denominator();
  if (k % 2 == 1) {
    out.kind = AngleKind::kOdd;
    out.index = static_cast<unsigned>((k - 1) / 2);
  } else {
    out.kind = AngleKind::kEven;
    out.index = static_cast<unsigned>(k / 2);
  }
  out.parity = out.index % 2 == 0 ? +1 : -1;
  return out;
}

AdmissibilityReport admissibility(const BoundaryData& data,
                                  AdmissibilityMode mode, double tol) {
  validate_boundary_data(data);
  AdmissibilityReport rep;
  const bool exact = mode == AdmissibilityMode::kExact;
  if (exact && !data.has_exact()) {
    throw GeometryError("exact admissibility requires rational boundary data");
  }

  Verdict lengths_ok;
  if (exact) {
    lengths_ok = incommensurable_exact(data.lengths_exact, rep.reasons, "length");
  } else {
    lengths_ok = incommensurable_float(data.lengths, tol, rep.reasons, "length");
  }

  bool any_odd = false;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const AngleClass cls = exact ? classify_angle_exact(data.angles_pi_exact[i])
                                 : classify_angle(data.angles[i]);
    if (cls.kind == AngleKind::kOdd) {
      any_odd = true;
      std::ostringstream os;
      os << "odd angle pi/" << (2 * cls.index + 1) << " at vertex " << i;
      rep.reasons.push_back(os.str());
    }
  }

  rep.admissible = any_odd ? Verdict::kNo : lengths_ok;

  // Weak notion: same incommensurability test on the reduced edge lengths.
  const std::vector<char> odd = odd_flags(data, exact);
  const auto groups = reduced_edge_groups(odd);
  if (groups.empty()) {
    // Smooth domain: a single closed curve, vacuously incommensurable.
    rep.weakly_edge_admissible = Verdict::kYes;
  } else if (exact) {
    std::vector<Rational> red;
    for (const auto& g : groups) {
      Rational s(0);
      for (std::size_t e : g) s += data.lengths_exact[e];
      red.push_back(s);
    }
    rep.weakly_edge_admissible =
        incommensurable_exact(red, rep.reasons, "reduced length");
  } else {
    std::vector<double> red;
    for (const auto& g : groups) {
      double s = 0.0;
      for (std::size_t e : g) s += data.lengths[e];
      red.push_back(s);
    }
    rep.weakly_edge_admissible =
        incommensurable_float(red, tol, rep.reasons, "reduced length");
  }
  return rep;
}

InvariantVector invariant_vectors(const BoundaryData& data) {
  InvariantVector v;
  for (double a : data.angles) {
    const double c = c_of_angle(a);
    v.C.push_back(c);
    v.C_abs.push_back(std::abs(c));
  }
  return v;
}

ExceptionalComponent reverse_component(const ExceptionalComponent& y) {
  ExceptionalComponent out = y;
  std::reverse(out.lengths.begin(), out.lengths.end());
  std::reverse(out.C.begin(), out.C.end());
  out.reversed = !y.reversed;
  return out;
}

std::vector<ExceptionalComponent> exceptional_components(
    const BoundaryData& data) {
  const std::size_t n = data.size();
  std::vector<std::size_t> evens;
  for (std::size_t i = 0; i < n; ++i) {
    if (classify_angle(data.angles[i]).kind == AngleKind::kEven) {
      evens.push_back(i);
    }
  }
  std::vector<ExceptionalComponent> out;
  if (evens.empty()) return out;
  for (std::size_t j = 0; j < evens.size(); ++j) {
    const std::size_t e = evens[j];
    const std::size_t f = evens[(j + 1) % evens.size()];
    ExceptionalComponent comp;
    // Edges e+1 .. f, interior vertices e+1 .. f-1 (cyclically).
    std::size_t v = (e + 1) % n;
    while (true) {
      comp.lengths.push_back(data.lengths[v]);
      if (v == f) break;
      comp.C.push_back(c_of_angle(data.angles[v]));
      v = (v + 1) % n;
    }
    out.push_back(std::move(comp));
  }
  return out;
}

double ReducedPolygon::total_length() const {
  double s = 0.0;
  for (const auto& e : edges) s += e.length;
  return s;
}

ReducedPolygon reduce_polygon(const BoundaryData& data) {
  validate_boundary_data(data);
  ReducedPolygon red;
  const std::vector<char> odd = odd_flags(data, false);
  const auto groups = reduced_edge_groups(odd);
  if (groups.empty()) {
    red.smooth_domain = true;
    red.edges.push_back({data.perimeter(), true});
    return red;
  }
  for (const auto& g : groups) {
    double s = 0.0;
    for (std::size_t e : g) s += data.lengths[e];
    red.edges.push_back({s, g.size() > 1});
    // The group ends at a surviving vertex; its angle follows the edge.
    red.angles.push_back(data.angles[g.back()]);
  }
  return red;
}

std::vector<double> inverse_c_preimages(double s, double alpha_min) {
  if (!(s >= 0.0) || !(s <= 1.0)) {
    throw GeometryError("|c| value must lie in [0, 1]");
  }
  if (!(alpha_min > 0.0)) {
    throw GeometryError("alpha_min must be positive");
  }
  const double a = std::acos(s);  // in [0, pi/2]
  const double theta_max = kPi * kPi / (2.0 * alpha_min);
  std::vector<double> thetas;
  for (long k = 0; static_cast<double>(k) * kPi <= theta_max + kPi; ++k) {
    const double base = static_cast<double>(k) * kPi;
    for (double th : {base + a, base + kPi - a}) {
      if (th > kPi / 2.0 + 1e-12 && th < theta_max) thetas.push_back(th);
    }
  }
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end(),
                           [](double p, double q) { return q - p < 1e-9; }),
               thetas.end());
  std::vector<double> out;
  for (double th : thetas) out.push_back(kPi * kPi / (2.0 * th));
  // Ascending theta is descending alpha already.
  return out;
}

double obtuse_c_preimage(double s) {
  if (!(s > 0.0) || !(s < 1.0)) {
    throw GeometryError("obtuse preimage needs |c| in (0, 1)");
  }
  return kPi * kPi / (2.0 * std::acos(-s));
}

std::vector<Rational> rational_angle_transfer(const Rational& q, long k) {
  if (!(q > Rational(0)) || !(q < Rational(1))) {
    throw GeometryError("transfer input must lie in (0, 1)");
  }
  if (k == 0) return {q};
  std::vector<Rational> out;
  for (int s : {+1, -1}) {
    const Rational denom = Rational(2 * k) * q + Rational(s);
    if (denom <= Rational(0)) continue;
    const Rational qp = q / denom;
    if (qp > Rational(0) && qp < Rational(1)) out.push_back(qp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Candidate enumeration
// ---------------------------------------------------------------------------

namespace {

struct Scenario {
  std::vector<double> lengths;
  std::vector<double> cabs;
};

std::string scenario_key(const Scenario& s) {
  std::string key;
  char buf[32];
  for (double l : s.lengths) {
    std::snprintf(buf, sizeof buf, "%.12g|", l);
    key += buf;
  }
  for (double c : s.cabs) {
    std::snprintf(buf, sizeof buf, "%.12g|", c);
    key += buf;
  }
  return key;
}

std::vector<std::size_t> even_positions(const Scenario& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.cabs.size(); ++i) {
    if (s.cabs[i] > 1.0 - 1e-9) out.push_back(i);
  }
  return out;
}

// Reverses the exceptional component between even vertices e and f (edges
// e+1..f, interior vertices e+1..f-1, cyclically).
Scenario reverse_component_in(Scenario s, std::size_t e, std::size_t f) {
  const std::size_t n = s.lengths.size();
  std::vector<std::size_t> edges;
  for (std::size_t v = (e + 1) % n;; v = (v + 1) % n) {
    edges.push_back(v);
    if (v == f) break;
  }
  for (std::size_t i = 0; i + 1 < edges.size() - i; ++i) {
    std::swap(s.lengths[edges[i]], s.lengths[edges[edges.size() - 1 - i]]);
  }
  std::vector<std::size_t> verts(edges.begin(), edges.end() - 1);
  for (std::size_t i = 0; i + 1 < verts.size() - i; ++i) {
    std::swap(s.cabs[verts[i]], s.cabs[verts[verts.size() - 1 - i]]);
  }
  return s;
}

void for_each_combination(const std::vector<std::size_t>& pool, std::size_t r,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  const std::size_t np = pool.size();
  if (r > np) return;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<std::size_t> picked;
    for (std::size_t i : idx) picked.push_back(pool[i]);
    fn(picked);
    if (r == 0) return;
    // Rightmost index that can still advance.
    std::size_t j = r;
    while (j > 0 && idx[j - 1] == j - 1 + np - r) --j;
    if (j == 0) return;
    ++idx[j - 1];
    for (std::size_t t = j; t < r; ++t) idx[t] = idx[t - 1] + 1;
  }
}

std::size_t binom(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  std::size_t v = 1;
  for (std::size_t i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
  return v;
}

std::size_t theorem_cap(const BoundaryData& target) {
  const std::size_t n = target.size();
  std::vector<std::size_t> evens;
  for (std::size_t i = 0; i < n; ++i) {
    if (classify_angle(target.angles[i]).kind == AngleKind::kEven) {
      evens.push_back(i);
    }
  }
  auto adjacent = [&](std::size_t a, std::size_t b) {
    return (a + 1) % n == b || (b + 1) % n == a;
  };
  switch (evens.size()) {
    case 0:
      return binom(n, 3);
    case 1:
      return binom(n - 1, 2);
    case 2:
      return adjacent(evens[0], evens[1]) ? 2 * (n - 2) : 4 * (n - 2);
    case 3: {
      const bool ab = adjacent(evens[0], evens[1]);
      const bool bc = adjacent(evens[1], evens[2]);
      const bool ca = adjacent(evens[2], evens[0]);
      const int pairs = int(ab) + int(bc) + int(ca);
      if (pairs >= 2) return 2;  // three in consecutive order
      if (pairs == 1) return 4;
      return 8;
    }
    default:
      return binom(n, 3);  // not covered by the theorem; generic fallback
  }
}

void push_candidate(std::vector<BoundaryData>& out, const BoundaryData& cand,
                    double tol) {
  for (const auto& prev : out) {
    if (congruent(prev, cand, std::max(tol, 1e-8))) return;
  }
  out.push_back(cand);
}

}  // namespace

CandidateSet enumerate_admissible_candidates(const BoundaryData& target,
                                             double tol, double angle_floor) {
  const auto adm = admissibility(target, AdmissibilityMode::kFloat);
  CandidateSet set;
  set.cap = theorem_cap(target);
  if (adm.admissible == Verdict::kNo) {
    std::string why = "target not admissible";
    for (const auto& r : adm.reasons) why += "; " + r;
    throw GeometryError(why);
  }
  if (adm.admissible == Verdict::kIndeterminate) {
    set.verdict = EnumerationVerdict::kIndeterminate;
    set.notes = adm.reasons;
    set.notes.push_back("cap not certified: admissibility indeterminate");
    return set;
  }

  const std::size_t n = target.size();
  const TrigPoly p_target = build_charpoly(target);

  // The spectral data fixes lengths and |c| up to dihedral relabeling and
  // exceptional-component reversal; enumerate those rearrangements.
  std::set<std::string> seen;
  std::vector<Scenario> scenarios;
  auto add_scenario = [&](const Scenario& s) {
    if (seen.insert(scenario_key(s)).second) scenarios.push_back(s);
  };
  for (std::size_t off = 0; off < n; ++off) {
    for (bool refl : {false, true}) {
      const BoundaryData seq = relabel(target, {off, refl});
      Scenario base;
      base.lengths = seq.lengths;
      for (double a : seq.angles) base.cabs.push_back(std::abs(c_of_angle(a)));
      const std::vector<std::size_t> evens = even_positions(base);
      if (evens.empty()) {
        add_scenario(base);
        continue;
      }
      const std::size_t k = evens.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Scenario s = base;
        for (std::size_t j = 0; j < k; ++j) {
          if (mask >> j & 1) {
            s = reverse_component_in(std::move(s), evens[j],
                                     evens[(j + 1) % k]);
          }
        }
        add_scenario(s);
      }
    }
  }

  for (const Scenario& sc : scenarios) {
    const std::vector<std::size_t> evens = even_positions(sc);
    if (evens.size() > 3) continue;
    std::vector<std::size_t> free_pos;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::binary_search(evens.begin(), evens.end(), i)) {
        free_pos.push_back(i);
      }
    }
    for_each_combination(
        free_pos, 3 - evens.size(), [&](const std::vector<std::size_t>& extra) {
          // Blanks: the even positions plus the chosen non-obtuse ones; the
          // other n-3 positions are forced obtuse, pinning their angles.
          std::vector<char> blank(n, 0);
          for (std::size_t i : evens) blank[i] = 1;
          for (std::size_t i : extra) blank[i] = 1;
          PartialBoundaryData part;
          part.lengths = sc.lengths;
          part.angles.assign(n, std::nullopt);
          for (std::size_t i = 0; i < n; ++i) {
            if (blank[i]) continue;
            if (sc.cabs[i] <= 1e-12 || sc.cabs[i] >= 1.0 - 1e-12) return;
            part.angles[i] = obtuse_c_preimage(sc.cabs[i]);
          }
          BoundaryData cand;
          try {
            cand = reconstruct_missing_angles(part);
          } catch (const GeometryError&) {
            return;
          }
          for (std::size_t i = 0; i < n; ++i) {
            if (cand.angles[i] < angle_floor) return;
            if (std::abs(std::abs(c_of_angle(cand.angles[i])) - sc.cabs[i]) >
                tol) {
              return;
            }
          }
          TrigPoly p;
          try {
            p = build_charpoly(cand);
          } catch (const GeometryError&) {
            return;
          }
          if (!equal_charpoly(p, p_target, tol)) return;
          push_candidate(set.candidates, cand, tol);
        });
  }

  set.verdict = EnumerationVerdict::kFinite;
  return set;
}

// ---------------------------------------------------------------------------
// Weak (odd-angle) enumeration
// ---------------------------------------------------------------------------

namespace {

// Pair sequence (length or placeholder, following angle) for the original
// polygon obtained by splitting the curved reduced edges.
struct WeakConfig {
  std::vector<double> angles;            // full original angle list
  std::vector<double> fixed_lengths;     // straight-edge lengths by index,
                                         // 0 where unknown
  std::vector<std::vector<std::size_t>> split_edges;  // per curved edge, the
                                                      // indices of its parts
  std::vector<double> split_sums;        // total length per curved edge
};

// Lays out the original-level angle/length pattern for a given assignment of
// odd angles to curved edges.  odd_per_edge[g] lists the odd angle values
// inserted (in order) inside curved edge g.
WeakConfig make_config(const ReducedPolygon& red,
                       const std::vector<std::size_t>& curved,
                       const std::vector<std::vector<double>>& odd_per_edge) {
  WeakConfig cfg;
  const std::size_t m = red.edges.size();
  std::size_t cg = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const bool is_curved =
        std::find(curved.begin(), curved.end(), j) != curved.end();
    if (!is_curved) {
      cfg.fixed_lengths.push_back(red.edges[j].length);
      cfg.angles.push_back(red.angles[j]);
      continue;
    }
    const auto& odds = odd_per_edge[cg];
    std::vector<std::size_t> parts;
    for (std::size_t t = 0; t <= odds.size(); ++t) {
      parts.push_back(cfg.fixed_lengths.size());
      cfg.fixed_lengths.push_back(0.0);
      cfg.angles.push_back(t < odds.size() ? odds[t] : red.angles[j]);
    }
    cfg.split_edges.push_back(parts);
    cfg.split_sums.push_back(red.edges[j].length);
    ++cg;
  }
  return cfg;
}

struct SolveOutcome {
  bool ok = false;
  bool continuum = false;
  BoundaryData solution;
  std::optional<OneParamFamily> family;
};

// Closes a weak configuration: the unknown sub-lengths of the curved edges
// are determined (generically) by the closed-path condition.
SolveOutcome close_config(const WeakConfig& cfg, double tol) {
  SolveOutcome out;
  const std::size_t n = cfg.angles.size();
  const auto dir = edge_dirs(cfg.angles);
  auto ux = [&](std::size_t e) { return std::cos(dir[e]); };
  auto uy = [&](std::size_t e) { return std::sin(dir[e]); };

  double perim = 0.0;
  for (double l : cfg.fixed_lengths) perim += l;
  for (double s : cfg.split_sums) perim += s;
  const double res_tol = std::max(tol, 1e-8) * std::max(1.0, perim);

  auto finish = [&](const std::vector<double>& lengths) {
    BoundaryData cand;
    cand.lengths = lengths;
    cand.angles = cfg.angles;
    try {
      validate_boundary_data(cand, 1e-7);
    } catch (const GeometryError&) {
      return;
    }
    out.ok = true;
    out.solution = cand;
  };

  if (cfg.split_edges.size() == 1 && cfg.split_edges[0].size() == 2) {
    // One odd vertex: a single split parameter, two closure equations.
    const auto& parts = cfg.split_edges[0];
    const double L = cfg.split_sums[0];
    double rx = 0.0, ry = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      rx += cfg.fixed_lengths[e] * ux(e);
      ry += cfg.fixed_lengths[e] * uy(e);
    }
    rx += L * ux(parts[1]);
    ry += L * uy(parts[1]);
    const double dx = ux(parts[0]) - ux(parts[1]);
    const double dy = uy(parts[0]) - uy(parts[1]);
    const double dd = dx * dx + dy * dy;
    if (dd < 1e-15) return out;
    const double x = -(rx * dx + ry * dy) / dd;
    if (std::hypot(rx + x * dx, ry + x * dy) > res_tol) return out;
    if (!(x > 0.0) || !(x < L)) return out;
    std::vector<double> lengths = cfg.fixed_lengths;
    lengths[parts[0]] = x;
    lengths[parts[1]] = L - x;
    finish(lengths);
    return out;
  }

  if (cfg.split_edges.size() == 1 && cfg.split_edges[0].size() == 3) {
    // Two adjacent odd vertices: three sub-lengths, closure plus the total.
    const auto& parts = cfg.split_edges[0];
    const double L = cfg.split_sums[0];
    double rx = 0.0, ry = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      rx += cfg.fixed_lengths[e] * ux(e);
      ry += cfg.fixed_lengths[e] * uy(e);
    }
    // M (x,y,z)^T = (-rx, -ry, L)^T by Cramer's rule.
    const double M[3][3] = {
        {ux(parts[0]), ux(parts[1]), ux(parts[2])},
        {uy(parts[0]), uy(parts[1]), uy(parts[2])},
        {1.0, 1.0, 1.0}};
    const double b[3] = {-rx, -ry, L};
    auto det3 = [](const double A[3][3]) {
      return A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
             A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
             A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
    };
    const double det = det3(M);
    if (std::abs(det) < 1e-12) {
      out.continuum = true;  // affinely dependent directions
      return out;
    }
    double sol[3];
    for (int c = 0; c < 3; ++c) {
      double Mc[3][3];
      for (int r = 0; r < 3; ++r) {
        for (int cc = 0; cc < 3; ++cc) Mc[r][cc] = M[r][cc];
        Mc[r][c] = b[r];
      }
      sol[c] = det3(Mc) / det;
    }
    if (!(sol[0] > 0.0) || !(sol[1] > 0.0) || !(sol[2] > 0.0)) return out;
    std::vector<double> lengths = cfg.fixed_lengths;
    for (int c = 0; c < 3; ++c) lengths[parts[c]] = sol[c];
    finish(lengths);
    return out;
  }

  if (cfg.split_edges.size() == 2) {
    // Two non-adjacent odd vertices: the split-edge linear system.
    EdgeSplitData es;
    es.angles = cfg.angles;
    es.split_a = cfg.split_edges[0][0];
    es.split_b = cfg.split_edges[1][0];
    es.sum_a = cfg.split_sums[0];
    es.sum_b = cfg.split_sums[1];
    for (std::size_t e = 0; e < n; ++e) {
      if (e == es.split_a || e == (es.split_a + 1) % n || e == es.split_b ||
          e == (es.split_b + 1) % n) {
        continue;
      }
      es.other_lengths.push_back(cfg.fixed_lengths[e]);
    }
    try {
      const EdgeSplitResult r = edge_split_solve(es);
      if (r.unique) {
        finish(r.solution.lengths);
      } else {
        out.continuum = true;
        out.family = r.family;
      }
    } catch (const GeometryError&) {
    }
    return out;
  }

  return out;
}

// Odd values alpha = pi/(2j+1) no smaller than floor.
std::vector<double> odd_values_above(double floor, std::size_t fallback_count) {
  std::vector<double> out;
  std::size_t j_max;
  if (floor > 0.0) {
    j_max = static_cast<std::size_t>(std::max(0.0, (kPi / floor - 1.0) / 2.0));
  } else {
    j_max = fallback_count;
  }
  for (std::size_t j = 1; j <= j_max; ++j) {
    out.push_back(kPi / static_cast<double>(2 * j + 1));
  }
  return out;
}

}  // namespace

CandidateSet enumerate_weak_candidates(const BoundaryData& target,
                                       double sigma_k, unsigned k,
                                       double tol) {
  const auto adm = admissibility(target, AdmissibilityMode::kFloat);
  CandidateSet set;

  // Known continuum class: a quadrilateral with two non-adjacent odd angles
  // and equal non-odd angles deforms isospectrally, so it is reported as not
  // finitely determined instead of rejected.
  if (target.size() == 4) {
    std::vector<std::size_t> odd_pos;
    for (std::size_t i = 0; i < 4; ++i) {
      if (classify_angle(target.angles[i]).kind == AngleKind::kOdd) {
        odd_pos.push_back(i);
      }
    }
    if (odd_pos.size() == 2 && (odd_pos[1] - odd_pos[0]) == 2) {
      const std::size_t g1 = (odd_pos[0] + 1) % 4;
      const std::size_t g2 = (odd_pos[1] + 1) % 4;
      if (std::abs(target.angles[g1] - target.angles[g2]) < 1e-7) {
        EdgeSplitData es;
        es.angles = target.angles;
        es.split_a = odd_pos[0];
        es.split_b = odd_pos[1];
        es.sum_a = target.lengths[odd_pos[0]] +
                   target.lengths[(odd_pos[0] + 1) % 4];
        es.sum_b = target.lengths[odd_pos[1]] +
                   target.lengths[(odd_pos[1] + 1) % 4];
        es.seed_la = target.lengths[odd_pos[0]];
        es.seed_lb = target.lengths[odd_pos[1]];
        const EdgeSplitResult r = edge_split_solve(es);
        if (!r.unique) {
          set.verdict = EnumerationVerdict::kContinuum;
          set.family = r.family;
          set.notes.push_back(
              "symmetric two-odd-angle quadrilateral: not finitely determined");
          return set;
        }
      }
    }
  }

  if (adm.weakly_edge_admissible == Verdict::kNo) {
    std::string why = "target not weakly edge-admissible";
    for (const auto& r : adm.reasons) why += "; " + r;
    throw GeometryError(why);
  }
  if (adm.weakly_edge_admissible == Verdict::kIndeterminate) {
    set.verdict = EnumerationVerdict::kIndeterminate;
    set.notes = adm.reasons;
    return set;
  }

  const std::size_t n = target.size();
  const ReducedPolygon red = reduce_polygon(target);
  const std::size_t k_odd = n - red.angles.size();

  if (k_odd == 0) {
    return enumerate_admissible_candidates(target, tol);
  }

  if (red.smooth_domain) {
    // All angles odd: only the equilateral triangle reduces this way.
    set.candidates.push_back(target);
    set.cap = 1;
    set.notes.push_back("smooth reduced boundary: equilateral triangle");
    return set;
  }

  if (k_odd > 2) {
    set.verdict = EnumerationVerdict::kIndeterminate;
    set.notes.push_back("more than two odd angles: outside the finiteness theorem");
    return set;
  }

  const double perim = target.perimeter();
  const double floor =
      sigma_k > 0.0
          ? angle_lower_bound(static_cast<unsigned>(n), sigma_k, perim, k)
          : 0.0;
  if (floor <= 0.0) {
    set.notes.push_back("no spectral angle floor: odd branch list truncated at j = 60");
  }

  const TrigPoly p_target = build_charpoly(target);
  double angle_rest = 0.0;
  for (double a : red.angles) angle_rest += a;
  // The angle sum pins the total of the odd angles exactly.
  const double odd_sum = (static_cast<double>(n) - 2.0) * kPi - angle_rest;

  std::vector<std::size_t> curved;
  for (std::size_t j = 0; j < red.edges.size(); ++j) {
    if (red.edges[j].curved) curved.push_back(j);
  }

  bool hit_continuum = false;
  auto accept = [&](const SolveOutcome& o) {
    if (o.continuum) {
      hit_continuum = true;
      if (o.family && !set.family) set.family = o.family;
      return;
    }
    if (!o.ok) return;
    for (double a : o.solution.angles) {
      if (a < floor) return;
    }
    TrigPoly p;
    try {
      p = build_charpoly(o.solution);
    } catch (const GeometryError&) {
      return;
    }
    if (!equal_charpoly(p, p_target, tol)) return;
    push_candidate(set.candidates, o.solution, tol);
  };

  const double cls_tol = 1e-7;
  if (k_odd == 1) {
    // Single odd angle, value pinned by the angle sum.
    if (classify_angle(odd_sum, cls_tol).kind == AngleKind::kOdd &&
        odd_sum >= floor) {
      accept(close_config(make_config(red, curved, {{odd_sum}}), tol));
    } else {
      set.notes.push_back("pinned odd angle fails classification or floor");
    }
  } else {
    // Two odd angles with pinned sum; the floor truncates the branch list.
    const std::vector<double> branch = odd_values_above(floor, 60);
    for (double a1 : branch) {
      const double a2 = odd_sum - a1;
      if (a2 < floor - cls_tol) continue;
      if (!(a2 > 0.0) || !(a2 < kPi)) continue;
      if (classify_angle(a2, cls_tol).kind != AngleKind::kOdd) continue;
      if (curved.size() == 1) {
        accept(close_config(make_config(red, curved, {{a1, a2}}), tol));
      } else {
        accept(close_config(make_config(red, curved, {{a1}, {a2}}), tol));
      }
    }
  }

  if (hit_continuum) {
    set.verdict = EnumerationVerdict::kContinuum;
    set.notes.push_back(
        "one-parameter deformation family: not finitely determined");
  } else {
    set.verdict = EnumerationVerdict::kFinite;
  }
  set.cap = std::max<std::size_t>(set.candidates.size(), 1);
  return set;
}

}  // namespace steklov
