#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "polyassign/claims.hpp"
#include "polyassign/opt.hpp"
#include "polyassign/scenario.hpp"
#include "polyassign/search.hpp"

namespace polyassign {

using Json = nlohmann::json;

// Scenario files:
//   {"name": str,
//    "shape": {"kind": "triangle", "S": x} | {"kind": "rectangle", "w": x, "h": y}
//           | {"kind": "polygon", "n": k, "d": x}
//           | {"kind": "ring", "profile": "uniform|linear|exponential", "n": k, "d": x},
//    "metric": "cycle|path|chord",
//    "capacities": [int, ...],
//    "arrivals": [s, ...],
//    "claims": {"greedy", "opt", "ratio", "paper_ref", "steps"?, "notes"?, "slack"?}?}
// Unknown keys are rejected at every level.
Scenario parse_scenario(std::string_view text);
Scenario scenario_from_json(const Json& doc);
Json to_json(const Scenario& scenario);

Json shape_to_json(const Shape& shape);
Shape shape_from_json(const Json& doc, const std::string& where = "shape");

// Non-finite numbers are written as the strings "inf"/"-inf".
Json number_to_json(double value);
double number_from_json(const Json& value, const std::string& where);

Json to_json(const RunResult& run);
RunResult run_from_json(const Json& doc);

Json to_json(const ClaimVerdict& row);
ClaimVerdict verdict_from_json(const Json& doc);
Json to_json(const std::vector<ClaimVerdict>& ledger);
std::vector<ClaimVerdict> ledger_from_json(const Json& doc);

Json to_json(const SearchResult& result);
SearchResult search_from_json(const Json& doc);

Json to_json(const SweepResult& sweep);
Json to_json(const std::vector<CurvePoint>& curve);

// CSV renderings. Numbers use shortest round-trip formatting; text fields are
// quoted when they contain a comma, quote or newline.
inline constexpr std::string_view kLedgerCsvHeader =
    "claim_id,paper_ref,claimed_greedy,computed_greedy,claimed_opt,computed_opt,claimed_ratio,"
    "ratio_vs_true_opt,ratio_vs_claimed_opt,verdict_greedy,verdict_opt,verdict_ratio,notes";
inline constexpr std::string_view kRunCsvHeader = "customer,s,greedy_facility,greedy_cost,opt_facility,opt_cost";
inline constexpr std::string_view kCurveCsvHeader = "x,R,R_prime";
inline constexpr std::string_view kSweepCsvHeader = "s,facility,greedy_cost,greedy_total,opt_total";

std::string ledger_to_csv(const std::vector<ClaimVerdict>& ledger);
std::string run_to_csv(const RunResult& run);
std::string curve_to_csv(const std::vector<CurvePoint>& curve);
std::string sweep_to_csv(const SweepResult& sweep);

std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Reads back the columns of ledger_to_csv; step lists and the row kind are
// not part of the CSV and come back empty / as claim rows.
std::vector<ClaimVerdict> ledger_from_csv(std::string_view text);

}  // namespace polyassign
