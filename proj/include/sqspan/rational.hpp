#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace sqspan {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational coordinate. All geometric predicates are evaluated on
/// these; doubles only appear in reported lengths and in filter fast paths.
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Builds num/den with den > 0. Throws on den == 0.
Rat rat_from_parts(std::int64_t num, std::int64_t den);

/// Numerator/denominator as int64 if both fit, otherwise nullopt.
std::optional<std::pair<std::int64_t, std::int64_t>> rat_to_int64_parts(const Rat& r);

/// "num/den" in lowest terms (den omitted when 1).
std::string rat_to_string(const Rat& r);

/// Parses the rat_to_string format (optional sign, optional "/den").
Rat rat_from_string(const std::string& s);

/// Best continued-fraction convergent p/q of sqrt(2) with q <= max_denominator.
/// max_denominator must be >= 1.
Rat sqrt2_convergent(std::int64_t max_denominator);

}  // namespace sqspan
