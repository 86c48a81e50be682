#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyassign/opt.hpp"
#include "polyassign/scenario.hpp"

namespace polyassign {

enum class Verdict { kPass, kFail, kConsistent, kViolated, kNotApplicable };
std::string_view to_string(Verdict verdict);
Verdict parse_verdict(std::string_view text);

enum class RowKind { kClaim, kLemmaBound };

inline constexpr double kClaimTolerance = 1e-9;

// One ledger row. Claim rows judge the construction's claimed greedy total,
// OPT and ratio; lemma rows compare the analytic OPT lower bound against the
// computed OPT and carry CONSISTENT/VIOLATED in verdict_opt.
struct ClaimVerdict {
  std::string claim_id;
  std::string paper_ref;
  RowKind kind = RowKind::kClaim;
  double claimed_greedy = 0.0;
  double computed_greedy = 0.0;
  double claimed_opt = 0.0;
  double computed_opt = 0.0;
  OptMethod opt_method = OptMethod::kMatching;
  double claimed_ratio = 0.0;
  double ratio_vs_true_opt = 0.0;
  double ratio_vs_claimed_opt = 0.0;
  Verdict verdict_greedy = Verdict::kNotApplicable;
  Verdict verdict_opt = Verdict::kNotApplicable;
  Verdict verdict_ratio = Verdict::kNotApplicable;
  std::vector<double> claimed_steps;
  std::vector<double> computed_steps;
  Verdict verdict_steps = Verdict::kNotApplicable;
  double tolerance = kClaimTolerance;
  std::string notes;

  friend bool operator==(const ClaimVerdict&, const ClaimVerdict&) = default;
};

// |claimed - computed| <= tol * max(1, |claimed|) + slack.
bool within_tolerance(double claimed, double computed, double tol, double slack = 0.0);

// Runs greedy and both OPT solvers (brute force only up to its size limit) on
// a scenario carrying claims. FAIL is reported, never thrown. Throws kNoClaims
// when the scenario carries none.
ClaimVerdict evaluate(const Scenario& scenario);

// Informational row: the lemma's lower bound on OPT for this instance.
ClaimVerdict lemma_row(const Scenario& scenario);

struct LedgerParams {
  int n_min = 3;
  int n_max = 16;
  double d = 1.0;
  double S = 1.0;
};

// The fixed triangle/rectangle cases, then every n-parametrized case for
// n_min..n_max, ordered by case then n; each claim row is followed by its
// lemma row. Rows are evaluated in parallel.
std::vector<ClaimVerdict> full_ledger(const LedgerParams& params);

// Serial reference with identical output.
std::vector<ClaimVerdict> full_ledger_serial(const LedgerParams& params);

bool any_failure(const std::vector<ClaimVerdict>& ledger);

}  // namespace polyassign
