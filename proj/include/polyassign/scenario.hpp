#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyassign/geometry.hpp"

namespace polyassign {

struct Facility {
  int id = 0;
  BoundaryPoint position;
  int capacity = 1;
};

// Values a construction claims for itself, kept next to the instance so the
// ledger can recompute them.
struct Claims {
  double greedy = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  std::string paper_ref;
  // Narrated per-customer greedy costs; empty when none are stated.
  std::vector<double> steps;
  std::string notes;
  // Total distance customers were nudged off their narrated positions. Claims
  // are compared in the limit of zero nudge, so this widens the tolerance.
  double slack = 0.0;

  friend bool operator==(const Claims&, const Claims&) = default;
};

struct Scenario {
  std::string name;
  Shape shape = Shape::triangle(1.0);
  Metric metric = Metric::kCycle;
  std::vector<int> capacities;
  std::vector<BoundaryPoint> arrivals;
  std::optional<Claims> claims;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

int total_capacity(const std::vector<int>& capacities);

std::vector<Facility> facilities(const Scenario& scenario);

// Throws polyassign::Error when the scenario breaks any structural rule:
// capacity count/positivity, metric support, arrival range or overflow.
void validate(const Scenario& scenario);

}  // namespace polyassign
