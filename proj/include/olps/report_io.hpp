#pragma once

#include <iosfwd>
#include <span>

#include <json.hpp>

#include "olps/engine.hpp"

namespace olps {

/// Report as JSON. Always carries algorithm, params, ls_achieved, ls_star,
/// regret, regret_bound, bound_satisfied, total_cost, total_queries and
/// success_events; per_step only when `verbose`.
nlohmann::json to_json(const RunReport& report, bool verbose = false);

/// Several replications: {"runs": [...], "summary": {...}}.
nlohmann::json to_json(std::span<const RunReport> reports, bool verbose = false);

/// One header line, then one line per report.
void write_csv(std::ostream& out, std::span<const RunReport> reports);

}  // namespace olps
