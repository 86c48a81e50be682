#pragma once

#include <span>
#include <vector>

#include "polyassign/geometry.hpp"
#include "polyassign/scenario.hpp"

namespace polyassign {

struct Assignment {
  int customer = 0;
  int facility = 0;
  double cost = 0.0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// One entry per served customer, in arrival order.
struct AssignmentRecord {
  std::vector<Assignment> steps;
  double total_cost = 0.0;

  friend bool operator==(const AssignmentRecord&, const AssignmentRecord&) = default;
};

struct GreedyState {
  std::vector<int> loads;
  AssignmentRecord record;
};

GreedyState make_greedy_state(int facility_count);

// Irrevocably serves one customer: the facility with residual capacity that
// is nearest under `metric`, lowest id on ties. Throws kCapacityExhausted when
// every facility is full; `state` is left untouched in that case.
Assignment greedy_step(const Shape& shape, Metric metric, std::span<const int> capacities,
                       GreedyState& state, BoundaryPoint customer);

AssignmentRecord run_greedy(const Scenario& scenario);

}  // namespace polyassign
