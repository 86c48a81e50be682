#include "polyassign/claims.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "polyassign/engine.hpp"
#include "polyassign/error.hpp"
#include "polyassign/format.hpp"
#include "polyassign/scenarios.hpp"

namespace polyassign {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kConsistent: return "CONSISTENT";
    case Verdict::kViolated: return "VIOLATED";
    case Verdict::kNotApplicable: return "N/A";
  }
  return "N/A";
}

Verdict parse_verdict(std::string_view text) {
  if (text == "PASS") return Verdict::kPass;
  if (text == "FAIL") return Verdict::kFail;
  if (text == "CONSISTENT") return Verdict::kConsistent;
  if (text == "VIOLATED") return Verdict::kViolated;
  if (text == "N/A") return Verdict::kNotApplicable;
  throw Error(ErrorCode::kParse, "unknown verdict '" + std::string(text) + "'");
}

bool within_tolerance(double claimed, double computed, double tol, double slack) {
  return std::fabs(claimed - computed) <= tol * std::max(1.0, std::fabs(claimed)) + slack;
}

namespace {

Verdict judge(bool ok) { return ok ? Verdict::kPass : Verdict::kFail; }

// Ratio claim under nudges of total size `slack`: greedy and OPT may each be
// off by up to slack, so the true-limit ratio lies in an interval.
bool ratio_within(double claimed, double greedy, double opt, double tol, double slack) {
  const double exact = competitive_ratio(greedy, opt);
  if (slack == 0.0 || opt <= slack) return within_tolerance(claimed, exact, tol);
  const double lo = (greedy - slack) / (opt + slack);
  const double hi = (greedy + slack) / (opt - slack);
  const double margin = tol * std::max(1.0, std::fabs(claimed));
  return claimed >= lo - margin && claimed <= hi + margin;
}

std::string joined_costs(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_number(values[i]);
  }
  return out + "]";
}

void append_note(std::string& notes, const std::string& text) {
  if (!notes.empty()) notes += "; ";
  notes += text;
}

std::vector<Scenario> ledger_scenarios(const LedgerParams& params) {
  if (params.n_min < 3 || params.n_max > 16 || params.n_min > params.n_max) {
    throw Error(ErrorCode::kInvalidArgument, "ledger n range must lie within 3..16");
  }
  std::vector<Scenario> out;
  for (PaperCase c : all_cases()) {
    CaseParams cp;
    cp.d = params.d;
    cp.S = params.S;
    if (!case_takes_n(c)) {
      out.push_back(build(c, cp));
      continue;
    }
    for (int n = params.n_min; n <= params.n_max; ++n) {
      cp.n = n;
      out.push_back(build(c, cp));
    }
  }
  return out;
}

}  // namespace

ClaimVerdict evaluate(const Scenario& scenario) {
  if (!scenario.claims) {
    throw Error(ErrorCode::kNoClaims, "scenario '" + scenario.name + "' carries no claims");
  }
  validate(scenario);
  const Claims& claims = *scenario.claims;

  ClaimVerdict v;
  v.claim_id = scenario.name;
  v.paper_ref = claims.paper_ref;
  v.kind = RowKind::kClaim;
  v.notes = claims.notes;

  const AssignmentRecord greedy = run_greedy(scenario);
  const OptResult matching = solve_matching(scenario);
  OptResult opt = matching;
  if (static_cast<int>(scenario.arrivals.size()) <= kBruteForceLimit) {
    opt = solve_bruteforce(scenario);
    if (opt.total_cost != matching.total_cost) {
      append_note(v.notes, "ORACLE MISMATCH: matching " + format_number(matching.total_cost) +
                               " vs brute force " + format_number(opt.total_cost));
    }
  }

  v.claimed_greedy = claims.greedy;
  v.computed_greedy = greedy.total_cost;
  v.claimed_opt = claims.opt;
  v.computed_opt = opt.total_cost;
  v.opt_method = opt.method;
  v.claimed_ratio = claims.ratio;
  v.ratio_vs_true_opt = competitive_ratio(greedy.total_cost, opt.total_cost);
  v.ratio_vs_claimed_opt = competitive_ratio(greedy.total_cost, claims.opt);

  v.verdict_greedy = judge(within_tolerance(claims.greedy, v.computed_greedy, v.tolerance, claims.slack));
  v.verdict_opt = judge(within_tolerance(claims.opt, v.computed_opt, v.tolerance, claims.slack));
  v.verdict_ratio = judge(ratio_within(claims.ratio, v.computed_greedy, v.computed_opt, v.tolerance, claims.slack));

  for (const Assignment& step : greedy.steps) v.computed_steps.push_back(step.cost);
  if (!claims.steps.empty()) {
    v.claimed_steps = claims.steps;
    bool ok = claims.steps.size() == v.computed_steps.size();
    for (std::size_t i = 0; ok && i < claims.steps.size(); ++i) {
      ok = within_tolerance(claims.steps[i], v.computed_steps[i], v.tolerance, claims.slack);
    }
    v.verdict_steps = judge(ok);
    append_note(v.notes, "steps " + std::string(to_string(v.verdict_steps)) + " claimed " +
                             joined_costs(v.claimed_steps) + " computed " + joined_costs(v.computed_steps));
  }
  if (v.verdict_opt == Verdict::kFail) {
    append_note(v.notes, "ratio vs claimed OPT " + format_number(v.ratio_vs_claimed_opt) + ", vs true OPT " +
                             format_number(v.ratio_vs_true_opt));
  }
  return v;
}

ClaimVerdict lemma_row(const Scenario& scenario) {
  validate(scenario);
  ClaimVerdict v;
  v.claim_id = scenario.name + "#lemma";
  v.kind = RowKind::kLemmaBound;
  switch (scenario.shape.kind()) {
    case ShapeKind::kEquilateralTriangle: v.paper_ref = "triangle lemma: OPT >= (m/3)(S/2)"; break;
    case ShapeKind::kRectangle: v.paper_ref = "rectangle lemma: OPT >= d/2"; break;
    case ShapeKind::kRegularPolygon: v.paper_ref = "n-gon lemma: OPT >= d/2"; break;
    case ShapeKind::kFacilityRing: v.paper_ref = "circle lemma: OPT >= (m/n)(d/2)"; break;
  }
  const OptResult opt = static_cast<int>(scenario.arrivals.size()) <= kBruteForceLimit ? solve_bruteforce(scenario)
                                                                                      : solve_matching(scenario);
  const double bound = paper_bound(scenario);
  v.claimed_opt = bound;
  v.computed_opt = opt.total_cost;
  v.opt_method = opt.method;
  v.claimed_greedy = v.computed_greedy = run_greedy(scenario).total_cost;
  v.ratio_vs_true_opt = competitive_ratio(v.computed_greedy, v.computed_opt);
  v.ratio_vs_claimed_opt = competitive_ratio(v.computed_greedy, bound);
  const bool holds = v.computed_opt >= bound - v.tolerance * std::max(1.0, bound);
  v.verdict_opt = holds ? Verdict::kConsistent : Verdict::kViolated;
  v.notes = "lower bound " + format_number(bound) + (holds ? " <= " : " > ") + "OPT " + format_number(v.computed_opt);
  return v;
}

std::vector<ClaimVerdict> full_ledger_serial(const LedgerParams& params) {
  const std::vector<Scenario> scenarios = ledger_scenarios(params);
  std::vector<ClaimVerdict> rows(2 * scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    rows[2 * i] = evaluate(scenarios[i]);
    rows[2 * i + 1] = lemma_row(scenarios[i]);
  }
  return rows;
}

std::vector<ClaimVerdict> full_ledger(const LedgerParams& params) {
  const std::vector<Scenario> scenarios = ledger_scenarios(params);
  std::vector<ClaimVerdict> rows(2 * scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  const long count = static_cast<long>(scenarios.size());
  // Rows land at fixed indices, so the ledger does not depend on scheduling.
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      rows[2 * k] = evaluate(scenarios[k]);
      rows[2 * k + 1] = lemma_row(scenarios[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return rows;
}

bool any_failure(const std::vector<ClaimVerdict>& ledger) {
  return std::any_of(ledger.begin(), ledger.end(), [](const ClaimVerdict& v) {
    return v.verdict_greedy == Verdict::kFail || v.verdict_opt == Verdict::kFail ||
           v.verdict_ratio == Verdict::kFail || v.verdict_steps == Verdict::kFail;
  });
}

}  // namespace polyassign
