#include "steklov/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace steklov {

std::optional<Rational> parse_rational(const std::string& text) {
  std::int64_t num = 0, den = 1;
  std::size_t pos = 0;
  try {
    num = std::stoll(text, &pos);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (pos < text.size()) {
    if (text[pos] != '/') return std::nullopt;
    std::size_t pos2 = 0;
    try {
      den = std::stoll(text.substr(pos + 1), &pos2);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (pos + 1 + pos2 != text.size() || den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

namespace {

// Entry that is either a plain number or an exact-rational string.
struct Scalar {
  double value = 0.0;
  std::optional<Rational> exact;
};

Scalar scalar_from_json(const Json& j, const char* what) {
  Scalar s;
  if (j.is_number()) {
    s.value = j.get<double>();
    return s;
  }
  if (j.is_string()) {
    const auto r = parse_rational(j.get<std::string>());
    if (!r) {
      throw GeometryError(std::string("malformed rational ") + what + ": " +
                          j.get<std::string>());
    }
    s.exact = *r;
    s.value = to_double(*r);
    return s;
  }
  throw GeometryError(std::string(what) + " must be a number or \"p/q\" string");
}

}  // namespace

BoundaryData boundary_from_json(const Json& j) {
  if (j.contains("vertices")) {
    std::vector<PlanarPoint> pts;
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 2) {
        throw GeometryError("each vertex must be an [x, y] pair");
      }
      pts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return extract_boundary_data(make_convex_polygon(std::move(pts)));
  }
  if (!j.contains("lengths") || !j.contains("angles_pi")) {
    throw GeometryError(
        "polygon spec needs either \"vertices\" or \"lengths\"+\"angles_pi\"");
  }
  BoundaryData data;
  bool all_exact = true;
  for (const auto& e : j.at("lengths")) {
    const Scalar s = scalar_from_json(e, "length");
    data.lengths.push_back(s.value);
    if (s.exact) {
      data.lengths_exact.push_back(*s.exact);
    } else {
      all_exact = false;
    }
  }
  for (const auto& e : j.at("angles_pi")) {
    const Scalar s = scalar_from_json(e, "angle");
    data.angles.push_back(s.value * kPi);
    if (s.exact) {
      data.angles_pi_exact.push_back(*s.exact);
    } else {
      all_exact = false;
    }
  }
  if (!all_exact) {
    data.lengths_exact.clear();
    data.angles_pi_exact.clear();
  }
  validate_boundary_data(data, 1e-7);
  return data;
}

BoundaryData load_polygon_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open polygon spec: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw GeometryError("malformed JSON in " + path + ": " + e.what());
  }
  return boundary_from_json(j);
}

Json boundary_to_json(const BoundaryData& data) {
  Json j;
  if (data.has_exact()) {
    for (const auto& l : data.lengths_exact) j["lengths"].push_back(to_string(l));
    for (const auto& a : data.angles_pi_exact) {
      j["angles_pi"].push_back(to_string(a));
    }
  } else {
    j["lengths"] = data.lengths;
    for (double a : data.angles) j["angles_pi"].push_back(a / kPi);
  }
  return j;
}

Json trig_poly_to_json(const TrigPoly& p) {
  Json j;
  j["terms"] = Json::array();
  for (const auto& t : p.terms) {
    j["terms"].push_back({t.frequency, t.coefficient});
  }
  j["constant"] = p.constant;
  return j;
}

TrigPoly trig_poly_from_json(const Json& j) {
  TrigPoly p;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 2) {
      throw GeometryError("each term must be a [frequency, coefficient] pair");
    }
    p.terms.push_back({t[0].get<double>(), t[1].get<double>()});
  }
  p.constant = j.value("constant", 0.0);
  return canonicalize(p, 1e-9);
}

Json candidate_set_to_json(const CandidateSet& set) {
  Json j;
  j["cap"] = set.cap;
  j["candidates"] = Json::array();
  for (const auto& c : set.candidates) j["candidates"].push_back(boundary_to_json(c));
  switch (set.verdict) {
    case EnumerationVerdict::kFinite:
      j["verdict"] = "finite";
      break;
    case EnumerationVerdict::kContinuum:
      j["verdict"] = "continuum";
      break;
    case EnumerationVerdict::kIndeterminate:
      j["verdict"] = "indeterminate";
      break;
  }
  if (set.family) {
    Json f;
    f["base"] = boundary_to_json(set.family->base);
    f["ratio"] = set.family->ratio;
    f["x_min"] = set.family->x_min;
    f["x_max"] = set.family->x_max;
    f["split_a"] = set.family->split_a;
    f["split_b"] = set.family->split_b;
    j["family"] = f;
  }
  if (!set.notes.empty()) j["notes"] = set.notes;
  return j;
}

std::string roots_to_csv(const QuasiSpectrum& spec) {
  std::ostringstream os;
  os.precision(15);
  os << "index,nu,multiplicity_source\n";
  std::size_t index = 0;
  for (const auto& root : spec.roots) {
    const std::size_t copies =
        root.location == 0.0 ? root.multiplicity / 2 : root.multiplicity;
    for (std::size_t c = 0; c < copies; ++c) {
      os << index++ << "," << root.location << ",root t=" << root.location
         << " mult " << root.multiplicity
         << (root.location == 0.0 ? " (halved at zero)" : "")
         << (root.multiplicity_capped ? " (capped)" : "") << "\n";
    }
  }
  return os.str();
}

std::string spectrum_to_csv(const ExtrapolatedSpectrum& spec) {
  std::ostringstream os;
  os.precision(15);
  os << "index,sigma,mesh_h,extrapolated\n";
  const auto& fine = spec.sigmas.back();
  for (std::size_t j = 0; j < fine.size(); ++j) {
    os << j << "," << fine[j] << "," << spec.mesh_h.back() << ","
       << spec.extrapolated[j] << "\n";
  }
  return os.str();
}

}  // namespace steklov
