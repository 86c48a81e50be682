#include "polyassign/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "polyassign/engine.hpp"
#include "polyassign/error.hpp"
#include "polyassign/opt.hpp"

namespace polyassign {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void invalid(const std::string& message) { throw Error(ErrorCode::kInvalidArgument, message); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> boundary_grid(const Shape& shape, Metric metric, int resolution) {
  const double length = boundary_length(shape, metric);
  std::vector<double> grid;
  const double res = static_cast<double>(resolution);
  for (long i = 0;; ++i) {
    const double s = static_cast<double>(i) / res;
    if (!in_range(shape, metric, BoundaryPoint{s})) break;
    grid.push_back(s);
  }
  (void)length;
  return grid;
}

// Hill-climbing objective: the ratio, or -inf where OPT = 0 < greedy.
double objective(const SequenceScore& score) { return std::isinf(score.ratio) ? kNegInf : score.ratio; }

struct RestartOutcome {
  std::vector<BoundaryPoint> sequence;
  double value = kNegInf;
  int passes = 0;
};

RestartOutcome climb(const SearchConfig& config, const std::vector<double>& grid, int restart) {
  RestartOutcome out;
  const auto m = static_cast<std::size_t>(config.customers);
  if (static_cast<std::size_t>(restart) < config.warm_starts.size()) {
    out.sequence = config.warm_starts[static_cast<std::size_t>(restart)];
  } else {
    std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(static_cast<std::uint64_t>(restart))));
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    out.sequence.resize(m);
    for (auto& p : out.sequence) p = BoundaryPoint{grid[pick(rng)]};
  }

  auto evaluate = [&](const std::vector<BoundaryPoint>& seq) {
    return objective(score_sequence(config.shape, config.metric, config.capacities, seq));
  };
  out.value = evaluate(out.sequence);

  while (out.passes < config.max_iterations) {
    ++out.passes;
    bool improved = false;
    for (std::size_t c = 0; c < out.sequence.size(); ++c) {
      const BoundaryPoint original = out.sequence[c];
      double best_value = out.value;
      std::size_t best_index = grid.size();
      for (std::size_t g = 0; g < grid.size(); ++g) {
        if (grid[g] == original.s) continue;
        out.sequence[c] = BoundaryPoint{grid[g]};
        const double value = evaluate(out.sequence);
        if (value > best_value) {
          best_value = value;
          best_index = g;
        }
      }
      if (best_index < grid.size()) {
        out.sequence[c] = BoundaryPoint{grid[best_index]};
        out.value = best_value;
        improved = true;
      } else {
        out.sequence[c] = original;
      }
    }
    if (!improved) break;
  }
  return out;
}

SearchResult merge(const SearchConfig& config, const std::vector<RestartOutcome>& outcomes) {
  std::size_t best = 0;
  int passes = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    passes += outcomes[r].passes;
    if (outcomes[r].value > outcomes[best].value) best = r;
  }
  SearchResult result;
  result.best_sequence = outcomes[best].sequence;
  result.best_restart = static_cast<int>(best);
  result.iterations_used = passes;
  const SequenceScore score = score_sequence(config.shape, config.metric, config.capacities, result.best_sequence);
  result.best_ratio = score.ratio;
  result.greedy_cost = score.greedy;
  result.opt_cost = score.opt;
  return result;
}

}  // namespace

void validate(const SearchConfig& config) {
  if (static_cast<int>(config.capacities.size()) != config.shape.facility_count()) {
    invalid("search capacities must list one entry per facility");
  }
  for (int c : config.capacities) {
    if (c < 1) invalid("search capacities must be >= 1");
  }
  require_metric(config.shape, config.metric);
  if (config.customers < 1) invalid("search needs at least one customer");
  if (config.customers > total_capacity(config.capacities)) invalid("customer count exceeds total capacity");
  if (config.grid_resolution < 2) invalid("grid resolution must be >= 2");
  if (config.restarts < 1) invalid("restarts must be >= 1");
  if (config.max_iterations < 0) invalid("max iterations must be >= 0");
  if (static_cast<int>(config.warm_starts.size()) > config.restarts) invalid("more warm starts than restarts");
  for (const auto& seq : config.warm_starts) {
    if (static_cast<int>(seq.size()) != config.customers) invalid("warm start has the wrong customer count");
    for (const auto& p : seq) {
      if (!in_range(config.shape, config.metric, p)) invalid("warm start position outside the boundary");
    }
  }
}

SequenceScore score_sequence(const Shape& shape, Metric metric, const std::vector<int>& capacities,
                             const std::vector<BoundaryPoint>& arrivals) {
  GreedyState state = make_greedy_state(shape.facility_count());
  for (const auto& p : arrivals) greedy_step(shape, metric, capacities, state, p);

  CostMatrix costs(static_cast<int>(arrivals.size()), shape.facility_count());
  const auto sites = shape.sites();
  for (int i = 0; i < costs.rows(); ++i) {
    for (int j = 0; j < costs.cols(); ++j) {
      costs(i, j) = distance(shape, metric, arrivals[static_cast<std::size_t>(i)], BoundaryPoint{sites[static_cast<std::size_t>(j)]});
    }
  }
  SequenceScore score;
  score.greedy = state.record.total_cost;
  score.opt = solve_matching(costs, capacities).total_cost;
  score.ratio = competitive_ratio(score.greedy, score.opt);
  return score;
}

SearchResult maximize_ratio_serial(const SearchConfig& config) {
  validate(config);
  const std::vector<double> grid = boundary_grid(config.shape, config.metric, config.grid_resolution);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  for (int r = 0; r < config.restarts; ++r) outcomes[static_cast<std::size_t>(r)] = climb(config, grid, r);
  return merge(config, outcomes);
}

SearchResult maximize_ratio(const SearchConfig& config) {
  validate(config);
  const std::vector<double> grid = boundary_grid(config.shape, config.metric, config.grid_resolution);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < config.restarts; ++r) outcomes[static_cast<std::size_t>(r)] = climb(config, grid, r);
  return merge(config, outcomes);
}

std::string_view to_string(SweepDirection direction) {
  return direction == SweepDirection::kClockwise ? "cw" : "ccw";
}

SweepDirection parse_direction(std::string_view text) {
  if (text == "cw" || text == "clockwise") return SweepDirection::kClockwise;
  if (text == "ccw" || text == "anticlockwise" || text == "counterclockwise") return SweepDirection::kAnticlockwise;
  throw Error(ErrorCode::kInvalidArgument, "direction must be cw or ccw, got '" + std::string(text) + "'");
}

SweepResult sweep_customer(const Scenario& scenario, int customer, SweepDirection direction, double step) {
  validate(scenario);
  if (customer < 0 || customer >= static_cast<int>(scenario.arrivals.size())) {
    invalid("sweep customer index out of range");
  }
  if (!(step > 0.0) || !std::isfinite(step)) invalid("sweep step must be positive");

  const double length = boundary_length(scenario.shape, scenario.metric);
  const bool open = scenario.metric == Metric::kPath && scenario.shape.kind() == ShapeKind::kFacilityRing;
  const double sign = direction == SweepDirection::kAnticlockwise ? 1.0 : -1.0;
  const double start = scenario.arrivals[static_cast<std::size_t>(customer)].s;
  // How far the customer may travel from its start.
  const double reach = open ? (sign > 0 ? length - start : start) : length;

  auto position = [&](double offset) {
    double s = start + sign * offset;
    if (open) return std::clamp(s, 0.0, length);
    s = std::fmod(s, length);
    if (s < 0.0) s += length;
    return s;
  };

  Scenario probe = scenario;
  auto greedy_facility = [&](double offset) {
    probe.arrivals[static_cast<std::size_t>(customer)] = BoundaryPoint{position(offset)};
    return run_greedy(probe).steps[static_cast<std::size_t>(customer)].facility;
  };

  SweepResult result;
  const long count = static_cast<long>(std::ceil(reach / step));
  double previous_offset = 0.0;
  for (long k = 0; k <= count; ++k) {
    const double offset = std::min(static_cast<double>(k) * step, reach);
    probe.arrivals[static_cast<std::size_t>(customer)] = BoundaryPoint{position(offset)};
    const AssignmentRecord greedy = run_greedy(probe);
    const Assignment& mine = greedy.steps[static_cast<std::size_t>(customer)];
    SweepSample sample;
    sample.s = position(offset);
    sample.facility = mine.facility;
    sample.greedy_cost = mine.cost;
    sample.greedy_total = greedy.total_cost;
    sample.opt_total = solve_matching(probe).total_cost;

    if (!result.samples.empty() && result.samples.back().facility != sample.facility) {
      // The facility id is piecewise constant in the offset; bisect for the edge.
      double lo = previous_offset;
      double hi = offset;
      const int from = result.samples.back().facility;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, length); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (greedy_facility(mid) == from ? lo : hi) = mid;
      }
      result.switches.push_back(SwitchPoint{position(0.5 * (lo + hi)), from, sample.facility});
    }
    result.samples.push_back(sample);
    previous_offset = offset;
    if (offset >= reach) break;
  }
  return result;
}

std::vector<CurvePoint> ratio_curve(double S, int samples) {
  if (!(S > 0.0) || !std::isfinite(S)) invalid("S must be a positive length");
  if (samples < 2) invalid("ratio curve needs at least 2 samples");
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double x = (S / 2.0) * static_cast<double>(k) / static_cast<double>(samples - 1);
    const double rest = S - x;
    out.push_back(CurvePoint{x, x / rest, S / (rest * rest)});
  }
  return out;
}

}  // namespace polyassign
