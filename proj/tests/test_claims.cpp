#include <string>
#include <vector>

#include "doctest.h"

#include "polyassign/claims.hpp"
#include "polyassign/error.hpp"
#include "polyassign/scenarios.hpp"

using namespace polyassign;

namespace {

const ClaimVerdict& row(const std::vector<ClaimVerdict>& ledger, const std::string& id) {
  for (const auto& r : ledger) {
    if (r.claim_id == id) return r;
  }
  FAIL("missing row " << id);
  return ledger.front();
}

}  // namespace

TEST_SUITE("claims") {

TEST_CASE("tolerance rule") {
  CHECK(within_tolerance(5.0, 5.0, 1e-9));
  CHECK(within_tolerance(1000.0, 1000.0 + 5e-7, 1e-9));
  CHECK_FALSE(within_tolerance(1000.0, 1000.0 + 2e-6, 1e-9));
  CHECK(within_tolerance(0.0, 5e-10, 1e-9));
  CHECK(within_tolerance(1.0, 1.1, 1e-9, 0.125));
}

TEST_CASE("triangle rows") {
  const ClaimVerdict lb = evaluate(build(PaperCase::kTriangleLB, {}));
  CHECK(lb.computed_greedy == 5.0);
  CHECK(lb.verdict_greedy == Verdict::kPass);
  CHECK(lb.computed_opt == 3.0);
  CHECK(lb.opt_method == OptMethod::kBruteForce);
  CHECK(lb.verdict_opt == Verdict::kFail);
  CHECK(lb.ratio_vs_claimed_opt == 5.0);
  CHECK(lb.ratio_vs_true_opt == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(lb.verdict_steps == Verdict::kPass);
  CHECK(lb.notes.find("ORACLE MISMATCH") == std::string::npos);
}

TEST_CASE("rectangle row") {
  const ClaimVerdict r = evaluate(build(PaperCase::kRectangleLB, {}));
  CHECK(r.claimed_greedy == 3.5);
  CHECK(r.computed_greedy == 4.5);
  CHECK(r.verdict_greedy == Verdict::kFail);
  CHECK(r.verdict_steps == Verdict::kPass);
  CHECK(r.computed_steps == std::vector<double>{0.5, 1, 1, 2});
}

TEST_CASE("no claims") {
  Scenario sc = build(PaperCase::kPolygonLB, {.n = 3});
  sc.claims.reset();
  try {
    (void)evaluate(sc);
    FAIL("expected kNoClaims");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoClaims);
  }
}

TEST_CASE("wrong claims are reported, not thrown") {
  Scenario sc = build(PaperCase::kPolygonLB, {.n = 4});
  sc.claims->greedy = 3.4;
  sc.claims->ratio = 6.0;
  const ClaimVerdict v = evaluate(sc);
  CHECK(v.verdict_greedy == Verdict::kFail);
  CHECK(v.verdict_opt == Verdict::kPass);
  CHECK(v.verdict_ratio == Verdict::kFail);
}

TEST_CASE("ledger layout") {
  const auto ledger = full_ledger({.n_min = 3, .n_max = 5});
  // 3 fixed cases + 4 n-cases x 3 values, each with a lemma row
  CHECK(ledger.size() == 2 * (3 + 4 * 3));
  for (std::size_t i = 0; i < ledger.size(); i += 2) {
    CHECK(ledger[i].kind == RowKind::kClaim);
    CHECK(ledger[i + 1].kind == RowKind::kLemmaBound);
    CHECK(ledger[i + 1].claim_id == ledger[i].claim_id + "#lemma");
    CHECK((ledger[i + 1].verdict_opt == Verdict::kConsistent || ledger[i + 1].verdict_opt == Verdict::kViolated));
  }
  CHECK(ledger[0].claim_id == "triangle-lb:S=1");
  CHECK(row(ledger, "polygon-lb:n=5,d=1").verdict_ratio == Verdict::kPass);
  CHECK(row(ledger, "circle-linear:n=4,d=1").computed_greedy == 6.5);
  CHECK(any_failure(ledger));
}

TEST_CASE("ledger parameters are checked") {
  CHECK_THROWS_AS(full_ledger({.n_min = 2, .n_max = 5}), Error);
  CHECK_THROWS_AS(full_ledger({.n_min = 6, .n_max = 5}), Error);
  CHECK_THROWS_AS(full_ledger({.n_min = 3, .n_max = 17}), Error);
  CHECK_THROWS_AS(full_ledger({.n_min = 3, .n_max = 4, .d = -1.0}), Error);
}

TEST_CASE("parallel ledger equals serial") {
  const LedgerParams params{.n_min = 3, .n_max = 16, .d = 0.5, .S = 2.0};
  CHECK(full_ledger(params) == full_ledger_serial(params));
}

TEST_CASE("verdict names") {
  for (Verdict v : {Verdict::kPass, Verdict::kFail, Verdict::kConsistent, Verdict::kViolated, Verdict::kNotApplicable}) {
    CHECK(parse_verdict(to_string(v)) == v);
  }
  CHECK(to_string(Verdict::kNotApplicable) == "N/A");
}

}  // TEST_SUITE
