#pragma once

#include <string>

#include <json.hpp>

#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"
#include "steklov/inverse.hpp"
#include "steklov/quasi_spectrum.hpp"
#include "steklov/trig_poly.hpp"

namespace steklov {

using Json = nlohmann::json;

/// Polygon spec files hold either {"vertices": [[x, y], ...]} or
/// {"lengths": [...], "angles_pi": [...]}, where list entries are numbers
/// or exact-rational strings like "1/2".  Rational inputs populate the
/// exact fields of the returned data.
BoundaryData boundary_from_json(const Json& j);
BoundaryData load_polygon_spec(const std::string& path);

Json boundary_to_json(const BoundaryData& data);

/// {"terms": [[frequency, coefficient], ...], "constant": c}, terms in
/// ascending frequency order.
Json trig_poly_to_json(const TrigPoly& p);
TrigPoly trig_poly_from_json(const Json& j);

Json candidate_set_to_json(const CandidateSet& set);

/// CSV rows: index,nu,multiplicity_source.
std::string roots_to_csv(const QuasiSpectrum& spec);

/// CSV rows: index,sigma,mesh_h,extrapolated (sigma at the finest level).
std::string spectrum_to_csv(const ExtrapolatedSpectrum& spec);

}  // namespace steklov
