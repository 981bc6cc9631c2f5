// Command-line frontend: charpoly, roots, bounds, reconstruct, isospectral,
// solve, compare, deform.  Exit codes: 0 success, 2 validation failure,
// 3 indeterminate verdict, 4 internal numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "steklov/bounds.hpp"
#include "steklov/fem.hpp"
#include "steklov/inverse.hpp"
#include "steklov/io.hpp"
#include "steklov/quasi_spectrum.hpp"
#include "steklov/trig_poly.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitNumerical = 4;

struct GlobalFlags {
  double tol = 1e-7;
  bool exact = false;
  double t_max = 0.0;
  unsigned k = 3;
  double mesh_h = 0.0;
  std::string out_dir;
};

void emit(const GlobalFlags& g, const std::string& name,
          const std::string& payload) {
  if (g.out_dir.empty()) {
    std::cout << payload;
    return;
  }
  const std::string path = g.out_dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw steklov::GeometryError("cannot write " + path);
  out << payload;
  std::cout << path << "\n";
}

steklov::BoundaryData load(const std::string& file) {
  return steklov::load_polygon_spec(file);
}

int run(int argc, char** argv) {
  using namespace steklov;
  CLI::App app{"Steklov characteristic polynomials of convex polygons"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--tol", g.tol, "comparison tolerance");
  app.add_flag("--exact", g.exact, "exact rational mode where available");
  app.add_option("--tmax", g.t_max, "root search upper limit");
  app.add_option("--k", g.k, "eigenvalue index bound");
  app.add_option("--mesh-h", g.mesh_h, "FEM boundary resolution");
  app.add_option("--out", g.out_dir, "output directory (default: stdout)");

  std::string file;
  std::string mode = "admissible";
  double sigma_floor = 0.0;

  auto* c_charpoly = app.add_subcommand("charpoly", "characteristic polynomial");
  c_charpoly->add_option("file", file)->required();

  auto* c_roots = app.add_subcommand("roots", "quasi-eigenvalues");
  c_roots->add_option("file", file)->required();

  auto* c_bounds = app.add_subcommand("bounds", "eigenvalue upper bounds");
  c_bounds->add_option("file", file)->required();

  auto* c_recon = app.add_subcommand("reconstruct", "complete blank angles");
  c_recon->add_option("file", file)->required();

  auto* c_iso = app.add_subcommand("isospectral", "candidate enumeration");
  c_iso->add_option("file", file)->required();
  c_iso->add_option("--mode", mode, "admissible|weak");
  c_iso->add_option("--sigma-floor", sigma_floor, "sigma_k for the angle floor");

  auto* c_solve = app.add_subcommand("solve", "FEM Steklov spectrum");
  c_solve->add_option("file", file)->required();

  auto* c_compare = app.add_subcommand("compare", "FEM vs quasi-eigenvalues");
  c_compare->add_option("file", file)->required();

  auto* c_deform = app.add_subcommand("deform", "isospectral deformation sweep");
  c_deform->add_option("file", file)->required();

  CLI11_PARSE(app, argc, argv);

  if (c_charpoly->parsed()) {
    BoundaryData data = load(file);
    if (g.exact && !data.has_exact()) {
      throw GeometryError("--exact requires rational lengths and angles_pi");
    }
    if (!g.exact) {
      data.lengths_exact.clear();
      data.angles_pi_exact.clear();
    }
    const TrigPoly p = build_charpoly(data);
    emit(g, "charpoly.json", trig_poly_to_json(p).dump(2) + "\n");
    return 0;
  }

  if (c_roots->parsed()) {
    const BoundaryData data = load(file);
    const TrigPoly p = build_charpoly(data);
    const double t_max =
        g.t_max > 0.0 ? g.t_max
                      : (g.k + 4) * kPi / p.top_frequency() + 1.0;
    const QuasiSpectrum qs = find_roots(p, t_max);
    emit(g, "roots.csv", roots_to_csv(qs));
    return 0;
  }

  if (c_bounds->parsed()) {
    const BoundaryData data = load(file);
    const ConvexPolygon poly = build_polygon(data);
    std::ostringstream os;
    os.precision(15);
    os << "formula,k,value,hypotheses_ok\n";
    for (unsigned k = 1; k <= g.k; ++k) {
      for (const BoundResult& b : bounds_for_polygon(poly, k)) {
        os << b.formula << "," << k << "," << b.value << ","
           << (b.hypotheses_ok ? 1 : 0) << "\n";
      }
    }
    emit(g, "bounds.csv", os.str());
    return 0;
  }

  if (c_recon->parsed()) {
    // Spec file with null entries in angles_pi marking the blanks.
    std::ifstream in(file);
    if (!in) throw GeometryError("cannot open polygon spec: " + file);
    Json j;
    in >> j;
    PartialBoundaryData part;
    for (const auto& e : j.at("lengths")) part.lengths.push_back(e.get<double>());
    for (const auto& e : j.at("angles_pi")) {
      if (e.is_null()) {
        part.angles.push_back(std::nullopt);
      } else {
        part.angles.push_back(e.get<double>() * kPi);
      }
    }
    const BoundaryData data = reconstruct_missing_angles(part);
    emit(g, "reconstructed.json", boundary_to_json(data).dump(2) + "\n");
    return 0;
  }

  if (c_iso->parsed()) {
    const BoundaryData data = load(file);
    CandidateSet set;
    if (mode == "admissible") {
      set = enumerate_admissible_candidates(data, g.tol);
    } else if (mode == "weak") {
      set = enumerate_weak_candidates(data, sigma_floor, g.k, g.tol);
    } else {
      throw GeometryError("--mode must be admissible or weak");
    }
    emit(g, "candidates.json", candidate_set_to_json(set).dump(2) + "\n");
    if (set.verdict == EnumerationVerdict::kIndeterminate) {
      return kExitIndeterminate;
    }
    return set.verdict == EnumerationVerdict::kContinuum ? 1 : 0;
  }

  if (c_solve->parsed()) {
    const BoundaryData data = load(file);
    const double h = g.mesh_h > 0.0 ? g.mesh_h : data.perimeter() / 40.0;
    const ExtrapolatedSpectrum spec = refined_spectrum(data, h, g.k);
    emit(g, "spectrum.csv", spectrum_to_csv(spec));
    return 0;
  }

  if (c_compare->parsed()) {
    const BoundaryData data = load(file);
    const double h = g.mesh_h > 0.0 ? g.mesh_h : data.perimeter() / 40.0;
    const ExtrapolatedSpectrum spec = refined_spectrum(data, h, g.k);
    const TrigPoly p = build_charpoly(data);
    const double density = p.top_frequency() / kPi;
    const double t_max =
        g.t_max > 0.0 ? g.t_max : (g.k + 4) / density + 1.0;
    const QuasiSpectrum qs = find_roots(p, t_max);
    if (qs.values.size() < spec.extrapolated.size()) {
      throw GeometryError("t_max too small to cover the requested indices; "
                          "enlarge --tmax");
    }
    AsymptoticReport rep = asymptotic_compare(spec.extrapolated, data);
    std::ostringstream os;
    os.precision(15);
    os << "index,sigma,nu,diff\n";
    for (std::size_t j = 0; j < spec.extrapolated.size(); ++j) {
      os << j << "," << spec.extrapolated[j] << "," << qs.values[j] << ","
         << rep.diffs[j] << "\n";
    }
    if (rep.exponent_defined) {
      os << "# fitted_exponent," << rep.fitted_exponent << "\n";
    }
    os << "# epsilon_ceiling," << rep.epsilon_ceiling << "\n";
    emit(g, "compare.csv", os.str());
    return 0;
  }

  if (c_deform->parsed()) {
    const BoundaryData data = load(file);
    const CandidateSet set = enumerate_weak_candidates(data, sigma_floor, g.k, g.tol);
    if (!set.family) {
      throw GeometryError("polygon carries no isospectral deformation family");
    }
    const OneParamFamily& fam = *set.family;
    const TrigPoly p0 = build_charpoly(fam.base);
    std::ostringstream os;
    os.precision(15);
    os << "x,charpoly_distance\n";
    const int count = 21;
    for (int i = 0; i < count; ++i) {
      const double margin = 1e-3 * (fam.x_max - fam.x_min);
      const double x = fam.x_min + margin +
                       (fam.x_max - fam.x_min - 2 * margin) * i / (count - 1);
      const TrigPoly p = build_charpoly(fam.member(x));
      os << x << "," << charpoly_distance(p, p0, 1e-9) << "\n";
    }
    emit(g, "deform.csv", os.str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const steklov::GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
