#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "polyassign/geometry.hpp"
#include "polyassign/scenario.hpp"

namespace polyassign {

struct SearchConfig {
  Shape shape = Shape::triangle(1.0);
  Metric metric = Metric::kCycle;
  std::vector<int> capacities;
  int customers = 1;
  int grid_resolution = 100;  // grid points per unit length
  int restarts = 20;
  int max_iterations = 100;   // full coordinate passes per restart
  std::uint64_t seed = 0;
  // Sequences used verbatim as the first restarts before random ones.
  std::vector<std::vector<BoundaryPoint>> warm_starts;
};

// Throws kInvalidArgument on a config that breaks its invariants.
void validate(const SearchConfig& config);

struct SequenceScore {
  double greedy = 0.0;
  double opt = 0.0;
  double ratio = 1.0;
};

// Greedy total, true OPT (matching) and their ratio for one arrival sequence.
SequenceScore score_sequence(const Shape& shape, Metric metric, const std::vector<int>& capacities,
                             const std::vector<BoundaryPoint>& arrivals);

struct SearchResult {
  std::vector<BoundaryPoint> best_sequence;
  double best_ratio = 1.0;
  double greedy_cost = 0.0;
  double opt_cost = 0.0;
  int iterations_used = 0;  // coordinate passes summed over restarts
  int best_restart = 0;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

// Seeded random restarts of coordinate-wise hill climbing on the boundary
// grid. A move is accepted only if it strictly raises greedy/OPT; positions
// with OPT = 0 < greedy never are. Restarts run in parallel; the merge keeps
// the largest ratio, lowest restart index on ties.
SearchResult maximize_ratio(const SearchConfig& config);

// Serial reference with identical output.
SearchResult maximize_ratio_serial(const SearchConfig& config);

enum class SweepDirection { kClockwise, kAnticlockwise };
std::string_view to_string(SweepDirection direction);
SweepDirection parse_direction(std::string_view text);

struct SweepSample {
  double s = 0.0;
  int facility = 0;           // greedy facility of the swept customer
  double greedy_cost = 0.0;   // that customer's greedy cost
  double greedy_total = 0.0;
  double opt_total = 0.0;

  friend bool operator==(const SweepSample&, const SweepSample&) = default;
};

struct SwitchPoint {
  double s = 0.0;
  int from = 0;
  int to = 0;

  friend bool operator==(const SwitchPoint&, const SwitchPoint&) = default;
};

struct SweepResult {
  std::vector<SweepSample> samples;
  std::vector<SwitchPoint> switches;  // in traversal order, located by bisection
};

// Moves one customer around the whole boundary (anticlockwise = increasing s),
// re-running greedy and OPT at every sample. On the open Path-metric ring the
// sweep stops at the end of the chain.
SweepResult sweep_customer(const Scenario& scenario, int customer, SweepDirection direction, double step);

struct CurvePoint {
  double x = 0.0;
  double r = 0.0;
  double r_prime = 0.0;
};

// R(x) = x / (S - x) and R'(x) = S / (S - x)^2 at `samples` evenly spaced
// points of [0, S/2].
std::vector<CurvePoint> ratio_curve(double S, int samples);

}  // namespace polyassign
