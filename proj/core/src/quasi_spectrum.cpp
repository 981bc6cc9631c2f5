#include "steklov/quasi_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace steklov {

namespace {

// Multiplicity at t0: smallest r >= 1 with p^(r)(t0) away from zero,
// relative to the size of the r-th derivative's coefficient mass.  The
// threshold must be generous before the location has been sharpened (a
// location error eps inflates p^(r) by O(eps) for r below the true order).
unsigned multiplicity_at(const TrigPoly& p, double t0, double rel_threshold,
                         const FindRootsOptions& opts, bool& capped) {
  capped = false;
  for (unsigned r = 1; r <= opts.max_derivative_order; ++r) {
    double mass = 0.0;
    for (const auto& term : p.terms) {
      mass += std::abs(term.coefficient) *
              std::pow(term.frequency, static_cast<double>(r));
    }
    if (mass == 0.0) break;
    if (std::abs(p.eval_derivative(t0, r)) > rel_threshold * mass) return r;
  }
  capped = true;
  return opts.max_derivative_order;
}

// Sign bisection of p^(order) on [a, b]; bisection uses signs only, so the
// location converges to tol even when the value underflows.
double bisect_derivative(const TrigPoly& p, unsigned order, double a, double b,
                         double tol) {
  double fa = p.eval_derivative(a, order);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = p.eval_derivative(m, order);
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Sharpens a root whose multiplicity is m >= 2: p^(m-1) has a simple
// sign-changing zero there, which bisection pins to full precision.
double sharpen_root(const TrigPoly& p, double t0, unsigned m, double radius,
                    double tol) {
  if (m < 2) return t0;
  const unsigned order = m - 1;
  double a = std::max(0.0, t0 - radius), b = t0 + radius;
  if ((p.eval_derivative(a, order) <= 0.0) ==
      (p.eval_derivative(b, order) <= 0.0)) {
    return t0;
  }
  return bisect_derivative(p, order, a, b, tol);
}

// Bisection on [a, b] assuming a sign change.
double bisect_root(const TrigPoly& p, double a, double b, double tol) {
  double fa = p.eval(a);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = p.eval(m);
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Local extremum of p inside [a, b] via bisection on p'.
double refine_extremum(const TrigPoly& p, double a, double b, double tol) {
  double da = p.eval_derivative(a, 1);
  double db = p.eval_derivative(b, 1);
  if ((da <= 0.0) == (db <= 0.0)) return 0.5 * (a + b);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double dm = p.eval_derivative(m, 1);
    if ((da <= 0.0) == (dm <= 0.0)) {
      a = m;
      da = dm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

QuasiSpectrum find_roots(const TrigPoly& p, double t_max,
                         const FindRootsOptions& opts) {
  if (p.terms.empty()) {
    throw std::invalid_argument("empty trigonometric polynomial");
  }
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

  const double topf = p.top_frequency();
  const double mass = p.coefficient_mass();
  const double touch = opts.touch_tol * mass;
  // At least 8 samples per oscillation of the fastest cosine.
  const double step = kPi / (8.0 * topf);
  const std::size_t nsteps = static_cast<std::size_t>(std::ceil(t_max / step));

  QuasiSpectrum out;
  auto push_root = [&](double t0, bool from_touch) {
    if (!out.roots.empty() && std::abs(out.roots.back().location - t0) < 0.25 * step) {
      return;  // already recorded from the neighboring interval
    }
    bool capped = false;
    // Coarse multiplicity first, then sharpen the location by bisecting the
    // (m-1)-th derivative and settle the multiplicity at the sharp point.
    unsigned mult = multiplicity_at(p, t0, 1e-3, opts, capped);
    if (mult >= 2 && t0 > 0.0) {
      t0 = sharpen_root(p, t0, mult, 0.5 * step, opts.bisect_tol);
      mult = multiplicity_at(p, t0, 1e-5, opts, capped);
    }
    if (from_touch && mult < 2 && !capped) mult = 2;
    QuasiRoot r;
    r.location = t0;
    r.multiplicity = mult;
    r.tangential = mult % 2 == 0;  // even-order touch, no sign change
    r.multiplicity_capped = capped;
    out.roots.push_back(r);
  };

  // Root at t = 0 (evenness forces an extremum there).
  if (std::abs(p.eval(0.0)) <= touch) push_root(0.0, true);

  std::vector<double> f(nsteps + 1);
  for (std::size_t i = 0; i <= nsteps; ++i) f[i] = p.eval(i * step);

  for (std::size_t i = 0; i < nsteps; ++i) {
    const double a = i * step, b = (i + 1) * step;
    if ((f[i] <= 0.0) != (f[i + 1] <= 0.0)) {
      const double t0 = bisect_root(p, a, b, opts.bisect_tol);
      if (t0 > 0.25 * step && t0 <= t_max) push_root(t0, false);
      continue;
    }
    // Tangential candidates: |p| dips near zero without a crossing.
    if (i > 0 && std::abs(f[i]) < std::abs(f[i - 1]) &&
        std::abs(f[i]) <= std::abs(f[i + 1]) && std::abs(f[i]) < 0.05 * mass) {
      const double t0 = refine_extremum(p, a - step, b, opts.bisect_tol);
      if (std::abs(p.eval(t0)) <= touch && t0 > 0.25 * step && t0 <= t_max) {
        push_root(t0, true);
      }
    }
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const QuasiRoot& x, const QuasiRoot& y) {
              return x.location < y.location;
            });
  for (const auto& r : out.roots) {
    const unsigned copies =
        r.location == 0.0 ? r.multiplicity / 2 : r.multiplicity;
    for (unsigned k = 0; k < copies; ++k) out.values.push_back(r.location);
  }
  return out;
}

double nu(const QuasiSpectrum& spectrum, std::size_t j) {
  if (j >= spectrum.values.size()) {
    throw std::out_of_range("quasi-eigenvalue index beyond enumeration; extend t_max");
  }
  return spectrum.values[j];
}

double epsilon_ceiling(const BoundaryData& data) {
  double e = 0.25;
  for (double a : data.angles) e = std::min(e, kPi / (2.0 * a) - 0.5);
  return e;
}

AsymptoticReport asymptotic_compare(const std::vector<double>& sigma,
                                    const BoundaryData& data,
                                    std::size_t head_skip) {
  const TrigPoly p = build_charpoly(data);
  const double density = p.top_frequency() / kPi;
  const double t_max = (sigma.size() + 4) / density + 1.0;
  const QuasiSpectrum qs = find_roots(p, t_max);

  AsymptoticReport rep;
  rep.head_skip = head_skip;
  rep.epsilon_ceiling = epsilon_ceiling(data);
  const std::size_t m = std::min(sigma.size(), qs.values.size());
  if (m != sigma.size()) {
    throw std::invalid_argument("quasi-spectrum shorter than measured spectrum");
  }
  rep.diffs.resize(m);
  for (std::size_t j = 0; j < m; ++j) rep.diffs[j] = sigma[j] - qs.values[j];

  // Least squares of log|d_j| against log j over the whole range past the
  // head segment; the first few indices sit far from the asymptotic regime.
  const std::size_t lo = head_skip;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t j = lo; j < m; ++j) {
    const double d = std::abs(rep.diffs[j]);
    if (d < 1e-14) continue;
    const double x = std::log(static_cast<double>(j));
    const double y = std::log(d);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 3) {
    const double denom = cnt * sxx - sx * sx;
    if (std::abs(denom) > 1e-12) {
      rep.fitted_exponent = (cnt * sxy - sx * sy) / denom;
      rep.exponent_defined = true;
    }
  }
  return rep;
}

}  // namespace steklov
