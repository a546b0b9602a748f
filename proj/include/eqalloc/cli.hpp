#pragma once

#include "eqalloc/deficit.hpp"
#include "eqalloc/evaluation.hpp"
#include "eqalloc/scenario.hpp"
#include "eqalloc/share_fairness.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace eqalloc::cli {

inline constexpr const char* kSchema = "eqalloc/1";

enum ExitCode : int { ok = 0, validation_error = 2, solver_error = 3 };

// Runs one command. `args` excludes the program name. The scenario is read
// from the file named on the command line, or from `in` when none is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// Result documents. Exact values are strings, floats are numbers.
nlohmann::json report_json(const Scenario& s, const WelfareReport& r);
nlohmann::json report_json(const Scenario& s, const DeficitResult& r);
nlohmann::json report_json(const Scenario& s, const CoinPlan& r);
nlohmann::json report_json(const Scenario& s, const ShareVector& r);

enum class Format { json, table };

// Renders a result document. Table mode prints one row per agent for the
// per-agent arrays and one "key: value" line for every other field.
std::string emit_report(const Scenario& s, const nlohmann::json& doc, Format format);

} // namespace eqalloc::cli
