#include "polyassign/engine.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "polyassign/error.hpp"

namespace polyassign {

int total_capacity(const std::vector<int>& capacities) {
  return std::accumulate(capacities.begin(), capacities.end(), 0);
}

std::vector<Facility> facilities(const Scenario& scenario) {
  std::vector<Facility> out;
  const auto sites = scenario.shape.sites();
  for (std::size_t j = 0; j < sites.size(); ++j) {
    const int capacity = j < scenario.capacities.size() ? scenario.capacities[j] : 0;
    out.push_back(Facility{static_cast<int>(j), BoundaryPoint{sites[j]}, capacity});
  }
  return out;
}

void validate(const Scenario& scenario) {
  const int n = scenario.shape.facility_count();
  if (static_cast<int>(scenario.capacities.size()) != n) {
    throw Error(ErrorCode::kSchema, "capacities: expected " + std::to_string(n) + " entries, got " +
                                        std::to_string(scenario.capacities.size()));
  }
  for (std::size_t j = 0; j < scenario.capacities.size(); ++j) {
    if (scenario.capacities[j] < 1) {
      throw Error(ErrorCode::kSchema, "capacities[" + std::to_string(j) + "] must be >= 1");
    }
  }
  require_metric(scenario.shape, scenario.metric);
  const double length = boundary_length(scenario.shape, scenario.metric);
  for (std::size_t i = 0; i < scenario.arrivals.size(); ++i) {
    if (!in_range(scenario.shape, scenario.metric, scenario.arrivals[i])) {
      throw Error(ErrorCode::kOutOfRange, "arrivals[" + std::to_string(i) + "] = " +
                                              std::to_string(scenario.arrivals[i].s) +
                                              " outside the boundary range of length " +
                                              std::to_string(length));
    }
  }
  const int capacity = total_capacity(scenario.capacities);
  if (static_cast<int>(scenario.arrivals.size()) > capacity) {
    throw Error(ErrorCode::kCapacityExhausted,
                std::to_string(scenario.arrivals.size()) + " arrivals exceed total capacity " +
                    std::to_string(capacity));
  }
}

GreedyState make_greedy_state(int facility_count) {
  GreedyState state;
  state.loads.assign(static_cast<std::size_t>(facility_count), 0);
  return state;
}

Assignment greedy_step(const Shape& shape, Metric metric, std::span<const int> capacities,
                       GreedyState& state, BoundaryPoint customer) {
  const auto sites = shape.sites();
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < sites.size(); ++j) {
    if (state.loads[j] >= capacities[j]) continue;
    const double cost = distance(shape, metric, customer, BoundaryPoint{sites[j]});
    if (cost < best_cost) {
      best = static_cast<int>(j);
      best_cost = cost;
    }
  }
  if (best < 0) {
    throw Error(ErrorCode::kCapacityExhausted,
                "every facility is full; customer " + std::to_string(state.record.steps.size()) +
                    " cannot be served");
  }
  ++state.loads[static_cast<std::size_t>(best)];
  const Assignment step{static_cast<int>(state.record.steps.size()), best, best_cost};
  state.record.steps.push_back(step);
  state.record.total_cost += best_cost;
  return step;
}

AssignmentRecord run_greedy(const Scenario& scenario) {
  GreedyState state = make_greedy_state(scenario.shape.facility_count());
  for (const BoundaryPoint& customer : scenario.arrivals) {
    greedy_step(scenario.shape, scenario.metric, scenario.capacities, state, customer);
  }
  return std::move(state.record);
}

}  // namespace polyassign
