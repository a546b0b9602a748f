#pragma once

#include "eqalloc/scenario.hpp"

#include <json.hpp>

#include <string_view>

namespace eqalloc {

// Scenario document:
//
//   { "types":  [{"name": "seat", "count": 7}],
//     "agents": [{"name": "A1", "weight": "1",
//                 "utility": {"kind": "linear", "rate": "2"}}],
//     "epsilon": 1e-9 }
//
// Utility kinds: table (values), linear (rate), power (c, a), log. With
// several types, weight and utility are arrays with one entry per type.
// Rationals may be integers, decimal strings or "p/q" strings.
// Throws ValidationError naming the offending field.
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario parse_scenario(std::string_view text);

nlohmann::json scenario_to_json(const Scenario& s);

} // namespace eqalloc
