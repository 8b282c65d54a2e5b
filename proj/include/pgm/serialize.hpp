#pragma once

// CSV and JSON forms of rationals, intervals and empirical distributions.
// Rationals are always strings ("3/8") so no precision is lost.
//
// CSV layout:
//     # total,<n>
//     # ambiguous,<n>
//     partition,count,frequency
//     "[2,1]",17,17/1000

#include "pgm/rational.hpp"
#include "pgm/samplers.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace pgm {

nlohmann::json to_json(const Rational& x);
/// An exact interval becomes a plain string, otherwise {"lower": .., "upper": ..}.
nlohmann::json to_json(const IntervalRational& x);
nlohmann::json to_json(const EmpiricalDistribution& dist);

Rational rational_from_json(const nlohmann::json& j);
IntervalRational interval_from_json(const nlohmann::json& j);
EmpiricalDistribution distribution_from_json(const nlohmann::json& j);

std::string to_csv(const EmpiricalDistribution& dist);
/// Throws std::invalid_argument on malformed input or inconsistent totals.
EmpiricalDistribution distribution_from_csv(std::string_view text);

}  // namespace pgm
