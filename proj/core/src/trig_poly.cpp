#include "steklov/trig_poly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "steklov/inverse.hpp"

namespace steklov {

namespace {

unsigned thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("STEKLOV_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

struct RawTerm {
  double freq = 0.0;
  double coef = 0.0;
  Rational freq_exact{0};
};

}  // namespace

double TrigPoly::coefficient_mass() const {
  double m = std::abs(constant);
  for (const auto& t : terms) m += std::abs(t.coefficient);
  return m;
}

double TrigPoly::eval(double t) const {
  double v = constant;
  for (const auto& term : terms) v += term.coefficient * std::cos(term.frequency * t);
  return v;
}

double TrigPoly::eval_derivative(double t, unsigned order) const {
  if (order == 0) return eval(t);
  // d^r/dt^r cos(ft) = f^r cos(ft + r pi/2)
  const double shift = order * kPi / 2.0;
  double v = 0.0;
  for (const auto& term : terms) {
    v += term.coefficient * std::pow(term.frequency, static_cast<double>(order)) *
         std::cos(term.frequency * t + shift);
  }
  return v;
}

double c_of_angle(double alpha) {
  if (!(alpha > 0.0) || !(alpha < kPi)) {
    throw GeometryError("c(alpha) requires alpha in (0, pi)");
  }
  return std::cos(kPi * kPi / (2.0 * alpha));
}

TrigPoly canonicalize(const TrigPoly& p, double freq_tol, double coef_tol) {
  std::vector<RawTerm> raw;
  raw.reserve(p.terms.size());
  const bool exact = p.has_exact();
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    RawTerm r;
    r.freq = std::abs(p.terms[i].frequency);
    r.coef = p.terms[i].coefficient;
    if (exact) {
      r.freq_exact = p.exact_frequencies[i];
      if (r.freq_exact < Rational(0)) r.freq_exact = -r.freq_exact;
    }
    raw.push_back(r);
  }
  if (exact) {
    std::sort(raw.begin(), raw.end(), [](const RawTerm& a, const RawTerm& b) {
      return a.freq_exact < b.freq_exact;
    });
  } else {
    std::sort(raw.begin(), raw.end(), [](const RawTerm& a, const RawTerm& b) {
      return a.freq < b.freq;
    });
  }

  TrigPoly out;
  out.constant = p.constant;
  std::size_t i = 0;
  while (i < raw.size()) {
    double coef = raw[i].coef;
    std::size_t j = i + 1;
    while (j < raw.size() &&
           (exact ? raw[j].freq_exact == raw[i].freq_exact
                  : raw[j].freq - raw[i].freq <= freq_tol)) {
      coef += raw[j].coef;
      ++j;
    }
    const bool zero_freq =
        exact ? raw[i].freq_exact == Rational(0) : raw[i].freq <= freq_tol;
    if (zero_freq) {
      out.constant += coef;  // cos(0 t) folds into the constant
    } else if (std::abs(coef) >= coef_tol) {
      out.terms.push_back({raw[i].freq, coef});
      if (exact) out.exact_frequencies.push_back(raw[i].freq_exact);
    }
    i = j;
  }
  return out;
}

TrigPoly build_charpoly(const BoundaryData& data) {
  validate_boundary_data(data);
  const std::size_t n = data.size();
  const bool exact = data.has_exact();

  std::vector<double> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = c_of_angle(data.angles[j]);

  // Sign vectors with xi_0 = +1 only; the xi <-> -xi symmetry supplies the
  // 1/2 prefactor.
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  std::vector<RawTerm> raw(count);
  auto fill_range = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      // bit j of mask set  <=>  xi_{j+1} = -1
      double coef = 1.0;
      double freq = data.lengths[0];
      int prev = +1;
      for (std::size_t j = 1; j < n; ++j) {
        const int s = (mask >> (j - 1)) & 1 ? -1 : +1;
        if (s != prev) coef *= c[j - 1];
        freq += s * data.lengths[j];
        prev = s;
      }
      if (prev != +1) coef *= c[n - 1];  // cyclic wrap back to xi_0 = +1
      raw[mask].freq = freq;
      raw[mask].coef = coef;
      if (exact) {
        Rational f = data.lengths_exact[0];
        for (std::size_t j = 1; j < n; ++j) {
          const int s = (mask >> (j - 1)) & 1 ? -1 : +1;
          f += Rational(s) * data.lengths_exact[j];
        }
        raw[mask].freq_exact = f;
      }
    }
  };

  const unsigned threads = thread_budget();
  if (threads > 1 && count >= (std::uint64_t{1} << 14)) {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t lo = t * chunk;
      if (lo >= count) break;
      pool.emplace_back(fill_range, lo, std::min(count, lo + chunk));
    }
    for (auto& th : pool) th.join();
  } else {
    fill_range(0, count);
  }

  TrigPoly p;
  p.terms.reserve(count);
  for (const auto& r : raw) {
    p.terms.push_back({r.freq, r.coef});
    if (exact) p.exact_frequencies.push_back(r.freq_exact);
  }
  double prod_sin = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    prod_sin *= std::sin(kPi * kPi / (2.0 * data.angles[j]));
  }
  p.constant = -prod_sin;
  return canonicalize(p, kGeomTol * data.perimeter());
}

TrigPoly smooth_charpoly(double perimeter) {
  if (!(perimeter > 0.0)) throw GeometryError("perimeter must be positive");
  TrigPoly p;
  p.terms.push_back({perimeter, 1.0});
  p.constant = -1.0;
  return p;
}

double charpoly_distance(const TrigPoly& p, const TrigPoly& q, double freq_tol) {
  if (p.terms.size() != q.terms.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double d = std::abs(p.constant - q.constant);
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    if (std::abs(p.terms[i].frequency - q.terms[i].frequency) > freq_tol) {
      return std::numeric_limits<double>::infinity();
    }
    d = std::max(d, std::abs(p.terms[i].coefficient - q.terms[i].coefficient));
  }
  return d;
}

bool equal_charpoly(const TrigPoly& p, const TrigPoly& q, double tol) {
  const double freq_scale = std::max(p.top_frequency(), q.top_frequency());
  return charpoly_distance(p, q, std::max(tol, kGeomTol * freq_scale)) <= tol;
}

ReducedCharpolyCheck reduced_charpoly_check(const BoundaryData& data, double tol) {
  const auto adm = admissibility(data, AdmissibilityMode::kFloat);
  if (adm.weakly_edge_admissible != Verdict::kYes) {
    throw GeometryError("reduced charpoly check requires weak edge-admissibility");
  }
  const TrigPoly p = build_charpoly(data);
  const ReducedPolygon red = reduce_polygon(data);

  ReducedCharpolyCheck out;
  for (std::size_t j = 0; j < data.size(); ++j) {
    const AngleClass cls = classify_angle(data.angles[j]);
    if (cls.kind == AngleKind::kOdd) out.parity_product *= cls.parity;
  }

  TrigPoly q;
  if (red.smooth_domain) {
    q = smooth_charpoly(red.total_length());
  } else {
    BoundaryData rd;
    for (const auto& e : red.edges) rd.lengths.push_back(e.length);
    rd.angles = red.angles;
    // The reduced polygon is curvilinear; its charpoly uses the same edge
    // length / angle expansion, so bypass the straight-edge validation.
    const std::size_t m = rd.size();
    std::vector<double> c(m);
    for (std::size_t j = 0; j < m; ++j) c[j] = c_of_angle(rd.angles[j]);
    const std::uint64_t count = m == 1 ? 1 : (std::uint64_t{1} << (m - 1));
    TrigPoly acc;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      double coef = 1.0;
      double freq = rd.lengths[0];
      int prev = +1;
      for (std::size_t j = 1; j < m; ++j) {
        const int s = (mask >> (j - 1)) & 1 ? -1 : +1;
        if (s != prev) coef *= c[j - 1];
        freq += s * rd.lengths[j];
        prev = s;
      }
      if (prev != +1) coef *= c[m - 1];
      acc.terms.push_back({freq, coef});
    }
    double prod_sin = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      prod_sin *= std::sin(kPi * kPi / (2.0 * rd.angles[j]));
    }
    acc.constant = -prod_sin;
    q = canonicalize(acc, kGeomTol * red.total_length());
  }

  TrigPoly q_flipped = q;
  q_flipped.constant *= out.parity_product;
  out.match = equal_charpoly(p, q_flipped, tol);
  out.constant_sign_flip = out.parity_product < 0;
  return out;
}

}  // namespace steklov
