#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "polyassign/cli.hpp"
#include "polyassign/report.hpp"

using namespace polyassign;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "polyassign");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate a case spec") {
  const Outcome o = run({"simulate", "polygon-lb:n=8,d=1"});
  REQUIRE(o.code == kExitOk);
  const Json doc = Json::parse(o.out);
  CHECK(doc["greedy_total"] == 7.5);
  CHECK(doc["opt_total"] == 0.5);
  CHECK(doc["ratio"] == 15.0);
}

TEST_CASE("simulate the fixture file as CSV") {
  const Outcome o = run({"simulate", std::string(POLYASSIGN_DATA_DIR) + "/scenarios/polygon-lb-8.json", "--out", "csv"});
  REQUIRE(o.code == kExitOk);
  CHECK(o.out.rfind("customer,s,greedy_facility,greedy_cost,opt_facility,opt_cost\n", 0) == 0);
  CHECK(o.out.find("total,,,7.5,,0.5\n") != std::string::npos);
}

TEST_CASE("metric override") {
  const Outcome o = run({"simulate", "rectangle-lb:d=1", "--metric", "path"});
  REQUIRE(o.code == kExitOk);
  CHECK(Json::parse(o.out)["arrivals"][0] == 3.5);
  CHECK(run({"simulate", "circle-linear:n=4", "--metric", "chord"}).code == kExitInput);
}

TEST_CASE("claims CSV header and strict mode") {
  Outcome o = run({"claims", "--n-min", "3", "--n-max", "8", "--out", "csv"});
  REQUIRE(o.code == kExitOk);
  CHECK(o.out.substr(0, o.out.find('\n')) ==
        "claim_id,paper_ref,claimed_greedy,computed_greedy,claimed_opt,computed_opt,claimed_ratio,"
        "ratio_vs_true_opt,ratio_vs_claimed_opt,verdict_greedy,verdict_opt,verdict_ratio,notes");
  o = run({"claims", "--n-min", "3", "--n-max", "3", "--strict"});
  CHECK(o.code == kExitStrictFail);
  o = run({"claims", "--n-min", "3", "--n-max", "3", "--d", "2", "--S", "2"});
  CHECK(o.code == kExitOk);
  CHECK(Json::parse(o.out).size() == 2 * (3 + 4));
}

TEST_CASE("curve") {
  const Outcome o = run({"curve", "--S", "1", "--samples", "3"});
  REQUIRE(o.code == kExitOk);
  CHECK(o.out == "x,R,R_prime\n0,0,1\n0.25,0.3333333333333333,1.7777777777777777\n0.5,1,4\n");
}

TEST_CASE("search output is reproducible") {
  const std::vector<std::string> args{"search", "--case-spec", "circle-uniform:n=3", "--m", "3",
                                      "--restarts", "20", "--seed", "0", "--resolution", "100"};
  const Outcome a = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == run(args).out);
  CHECK(Json::parse(a.out)["best_ratio"].get<double>() >= 5.0 - 1e-6);
}

TEST_CASE("seed falls back to the environment") {
  const std::vector<std::string> base{"search", "--case-spec", "polygon-lb:n=5", "--restarts", "2"};
  std::vector<std::string> explicit_seed = base;
  explicit_seed.insert(explicit_seed.end(), {"--seed", "17"});
  ::setenv("POLYASSIGN_SEED", "17", 1);
  const Outcome from_env = run(base);
  ::unsetenv("POLYASSIGN_SEED");
  CHECK(from_env.out == run(explicit_seed).out);
  ::setenv("POLYASSIGN_SEED", "x", 1);
  CHECK(run(base).code == kExitInput);
  ::unsetenv("POLYASSIGN_SEED");
}

TEST_CASE("sweep") {
  const Outcome o = run({"sweep", "triangle-exact", "--customer", "0", "--direction", "cw", "--step", "0.5"});
  REQUIRE(o.code == kExitOk);
  CHECK(o.out.rfind("s,facility,greedy_cost,greedy_total,opt_total\n0.5,0,0.5,2.5,1.5\n", 0) == 0);
  CHECK(run({"sweep", "triangle-exact", "--customer", "5"}).code == kExitInput);
}

TEST_CASE("case prints a scenario file") {
  const Outcome o = run({"case", "circle-uniform:n=3"});
  REQUIRE(o.code == kExitOk);
  CHECK(to_json(parse_scenario(o.out)).dump(2) + "\n" == o.out);
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"claims", "--bogus"}).code == kExitInput);
  CHECK(run({"claims", "--n-min", "2"}).code == kExitInput);
  CHECK(run({"simulate", "no-such-case"}).code == kExitInput);
  CHECK(run({"simulate", "polygon-lb:n=3", "--out", "xml"}).code == kExitInput);
  const Outcome help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("polygon-lb:n=8,d=1") != std::string::npos);
}

TEST_CASE("byte-identical repeats") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"claims"}, {"claims", "--out", "csv"}, {"simulate", "circle-exponential:n=9"},
        {"curve", "--samples", "50", "--out", "json"}}) {
    CHECK(run(args).out == run(args).out);
  }
}

}  // TEST_SUITE
