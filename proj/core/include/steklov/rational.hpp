#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>

namespace steklov {

/// Exact rational scalar used by the optional exact mode.  Numerators and
/// denominators stay small for the inputs we care about (user-specified
/// fractions of pi and rational edge lengths), so a 64-bit backing type is
/// plenty.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Parses "p/q" or a plain integer string.  Returns nullopt on malformed
/// input or zero denominator.
std::optional<Rational> parse_rational(const std::string& text);

std::string to_string(const Rational& r);

}  // namespace steklov
