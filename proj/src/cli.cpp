#include "polyassign/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "polyassign/claims.hpp"
#include "polyassign/error.hpp"
#include "polyassign/format.hpp"
#include "polyassign/opt.hpp"
#include "polyassign/report.hpp"
#include "polyassign/scenarios.hpp"
#include "polyassign/search.hpp"
#include "polyassign/service.hpp"

namespace polyassign {

namespace {

constexpr const char* kFooter = R"(Case specs: name[:key=value,...]
  names: triangle-lb triangle-exact rectangle-lb polygon-lb circle-uniform
         circle-linear circle-exponential
  keys:  n (facilities; required for polygon-lb and circle-*), d (side / base gap),
         S (triangle side), eps (arrival nudge toward the intended facility)
  e.g.   polygon-lb:n=8,d=1   triangle-lb:S=2   circle-linear:n=4
Exit status: 0 ok, 2 input error, 1 internal error, 3 a FAIL row under --strict.)";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// A path to an existing file is a scenario file; anything else must be a case spec.
Scenario load_target(const std::string& target) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(target, ec)) {
    try {
      return parse_scenario(read_file(target));
    } catch (const Error& e) {
      throw Error(e.code(), target + ": " + e.what());
    }
  }
  return build(parse_case_spec(target));
}

void apply_metric(Scenario& scenario, const std::string& metric) {
  if (metric.empty()) return;
  scenario.metric = parse_metric(metric);
  validate(scenario);
}

std::uint64_t default_seed() {
  const char* env = std::getenv("POLYASSIGN_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(env, &used, 0);
    if (used != std::string_view(env).size()) throw std::invalid_argument("trailing");
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, std::string("POLYASSIGN_SEED is not an integer: ") + env);
  }
}

void print_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << "\n"; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Greedy versus offline-optimal assignment on polygon and ring boundaries", "polyassign"};
  app.footer(kFooter);
  app.require_subcommand(1);

  std::string target;
  std::string metric;
  std::string format = "json";

  auto* simulate = app.add_subcommand("simulate", "Run greedy and OPT on a scenario file or case spec");
  simulate->add_option("target", target, "Scenario JSON file or case spec")->required();
  simulate->add_option("--metric", metric, "Override the metric: cycle, path or chord");
  simulate->add_option("--out", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  LedgerParams ledger;
  bool strict = false;
  auto* claims = app.add_subcommand("claims", "Evaluate every construction's claimed costs");
  claims->add_option("--n-min", ledger.n_min, "Smallest n")->capture_default_str();
  claims->add_option("--n-max", ledger.n_max, "Largest n")->capture_default_str();
  claims->add_option("--d", ledger.d, "Side length / base gap")->capture_default_str();
  claims->add_option("--S", ledger.S, "Triangle side")->capture_default_str();
  claims->add_option("--out", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  claims->add_flag("--strict", strict, "Exit 3 when any row is FAIL");

  std::string case_spec;
  int customers = 0;
  int restarts = 20;
  int resolution = 100;
  int max_iterations = 100;
  std::uint64_t seed = 0;
  bool warm = false;
  auto* search = app.add_subcommand("search", "Hill-climb for arrival sequences with a large greedy/OPT ratio");
  search->add_option("--case-spec", case_spec, "Shape, metric and capacities are taken from this case")->required();
  search->add_option("--m", customers, "Customers (default: the case's arrival count)");
  search->add_option("--restarts", restarts, "Random restarts")->capture_default_str();
  auto* seed_opt = search->add_option("--seed", seed, "RNG seed (default: $POLYASSIGN_SEED, else 0)");
  search->add_option("--resolution", resolution, "Grid points per unit length")->capture_default_str();
  search->add_option("--max-iterations", max_iterations, "Coordinate passes per restart")->capture_default_str();
  search->add_option("--metric", metric, "Override the metric");
  search->add_flag("--warm-start", warm, "Use the case's own arrivals as the first restart");

  double curve_s = 1.0;
  int samples = 101;
  auto* curve = app.add_subcommand("curve", "Tabulate R(x) = x/(S-x) and its derivative on [0, S/2]");
  curve->add_option("--S", curve_s, "Triangle side")->capture_default_str();
  curve->add_option("--samples", samples, "Sample count")->capture_default_str();
  curve->add_option("--out", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  int customer = 0;
  std::string direction = "ccw";
  double step = 0.01;
  auto* sweep = app.add_subcommand("sweep", "Move one customer around the boundary and record greedy's choice");
  sweep->add_option("target", target, "Scenario JSON file or case spec")->required();
  sweep->add_option("--customer", customer, "Index of the customer to move")->required();
  sweep->add_option("--direction", direction, "cw or ccw")->check(CLI::IsMember({"cw", "ccw"}))->capture_default_str();
  sweep->add_option("--step", step, "Arc-length step")->capture_default_str();
  sweep->add_option("--metric", metric, "Override the metric");
  sweep->add_option("--out", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string spec_text;
  auto* case_cmd = app.add_subcommand("case", "Print a construction as a scenario file");
  case_cmd->add_option("spec", spec_text, "Case spec")->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP session service");
  serve_cmd->add_option("--port", port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--static-dir", static_dir, "Directory served at /");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (simulate->parsed()) {
      Scenario scenario = load_target(target);
      apply_metric(scenario, metric);
      const RunResult run = run_scenario(scenario);
      if (format == "csv") {
        out << run_to_csv(run);
      } else {
        print_json(out, to_json(run));
      }
    } else if (claims->parsed()) {
      const auto rows = full_ledger(ledger);
      if (format == "csv") {
        out << ledger_to_csv(rows);
      } else {
        print_json(out, to_json(rows));
      }
      if (strict && any_failure(rows)) return kExitStrictFail;
    } else if (search->parsed()) {
      Scenario base = build(parse_case_spec(case_spec));
      apply_metric(base, metric);
      SearchConfig config;
      config.shape = base.shape;
      config.metric = base.metric;
      config.capacities = base.capacities;
      config.customers = customers > 0 ? customers : static_cast<int>(base.arrivals.size());
      config.restarts = restarts;
      config.grid_resolution = resolution;
      config.max_iterations = max_iterations;
      config.seed = seed_opt->count() > 0 ? seed : default_seed();
      if (warm && static_cast<int>(base.arrivals.size()) == config.customers) {
        config.warm_starts.push_back(base.arrivals);
      }
      print_json(out, to_json(maximize_ratio(config)));
    } else if (curve->parsed()) {
      if (curve->count("--out") == 0) format = "csv";
      const auto points = ratio_curve(curve_s, samples);
      if (format == "csv") {
        out << curve_to_csv(points);
      } else {
        print_json(out, to_json(points));
      }
    } else if (sweep->parsed()) {
      if (sweep->count("--out") == 0) format = "csv";
      Scenario scenario = load_target(target);
      apply_metric(scenario, metric);
      const SweepResult result = sweep_customer(scenario, customer, parse_direction(direction), step);
      if (format == "csv") {
        out << sweep_to_csv(result);
      } else {
        print_json(out, to_json(result));
      }
    } else if (case_cmd->parsed()) {
      print_json(out, to_json(build(parse_case_spec(spec_text))));
    } else if (serve_cmd->parsed()) {
      if (port < 0 || port > 65535) throw Error(ErrorCode::kInvalidArgument, "port out of range");
      return serve(host, port, static_dir, err) == 0 ? kExitOk : kExitInternal;
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace polyassign
