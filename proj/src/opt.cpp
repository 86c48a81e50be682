#include "polyassign/opt.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "polyassign/error.hpp"

namespace polyassign {

std::string_view to_string(OptMethod method) {
  return method == OptMethod::kBruteForce ? "bruteforce" : "matching";
}

CostMatrix cost_matrix(const Scenario& scenario) {
  const auto sites = scenario.shape.sites();
  const int m = static_cast<int>(scenario.arrivals.size());
  const int n = static_cast<int>(sites.size());
  CostMatrix costs(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      costs(i, j) = distance(scenario.shape, scenario.metric, scenario.arrivals[static_cast<std::size_t>(i)],
                             BoundaryPoint{sites[static_cast<std::size_t>(j)]});
    }
  }
  return costs;
}

namespace {

void fill_costs(const CostMatrix& costs, OptResult& result) {
  result.costs.clear();
  result.total_cost = 0.0;
  for (int i = 0; i < costs.rows(); ++i) {
    result.costs.push_back(costs(i, result.assignment[static_cast<std::size_t>(i)]));
    result.total_cost += result.costs.back();
  }
}

void require_capacity(const CostMatrix& costs, std::span<const int> capacities) {
  if (static_cast<int>(capacities.size()) != costs.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "capacity count does not match facility count");
  }
  long slots = 0;
  for (int c : capacities) slots += c;
  if (slots < costs.rows()) {
    throw Error(ErrorCode::kCapacityExhausted, "more customers than facility slots");
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const CostMatrix& costs, std::span<const int> capacities)
      : costs_(costs), residual_(capacities.begin(), capacities.end()),
        current_(static_cast<std::size_t>(costs.rows())),
        best_(static_cast<std::size_t>(costs.rows())),
        tail_bound_(static_cast<std::size_t>(costs.rows()) + 1, 0.0) {
    // tail_bound_[i]: every customer from i on pays at least its cheapest site.
    for (int i = costs.rows() - 1; i >= 0; --i) {
      double cheapest = std::numeric_limits<double>::infinity();
      for (int j = 0; j < costs.cols(); ++j) cheapest = std::min(cheapest, costs(i, j));
      tail_bound_[static_cast<std::size_t>(i)] = tail_bound_[static_cast<std::size_t>(i) + 1] + cheapest;
    }
  }

  void run() { descend(0, 0.0); }
  const std::vector<int>& best() const { return best_; }

 private:
  void descend(int customer, double partial) {
    if (customer == costs_.rows()) {
      // Strict improvement keeps the first (lexicographically smallest) optimum.
      if (partial < best_total_) {
        best_total_ = partial;
        best_ = current_;
      }
      return;
    }
    // Prune with a relative margin so rounding in the bound never discards an
    // assignment whose exact total ties the incumbent.
    const double bound = partial + tail_bound_[static_cast<std::size_t>(customer)];
    if (bound > best_total_ + 1e-12 * std::max(1.0, best_total_)) return;
    for (int j = 0; j < costs_.cols(); ++j) {
      auto& residual = residual_[static_cast<std::size_t>(j)];
      if (residual == 0) continue;
      --residual;
      current_[static_cast<std::size_t>(customer)] = j;
      descend(customer + 1, partial + costs_(customer, j));
      ++residual;
    }
  }

  const CostMatrix& costs_;
  std::vector<int> residual_;
  std::vector<int> current_;
  std::vector<int> best_;
  std::vector<double> tail_bound_;
  double best_total_ = std::numeric_limits<double>::infinity();
};

}  // namespace

OptResult solve_bruteforce(const CostMatrix& costs, std::span<const int> capacities) {
  if (costs.rows() > kBruteForceLimit) {
    throw Error(ErrorCode::kTooManyCustomers,
                "brute force is limited to " + std::to_string(kBruteForceLimit) + " customers, got " +
                    std::to_string(costs.rows()));
  }
  require_capacity(costs, capacities);
  BranchAndBound search(costs, capacities);
  search.run();
  OptResult result;
  result.assignment = search.best();
  fill_costs(costs, result);
  result.method = OptMethod::kBruteForce;
  return result;
}

OptResult solve_bruteforce(const Scenario& scenario) {
  return solve_bruteforce(cost_matrix(scenario), scenario.capacities);
}

OptResult solve_matching(const CostMatrix& costs, std::span<const int> capacities) {
  require_capacity(costs, capacities);
  const int m = costs.rows();
  std::vector<int> slot_facility;
  for (std::size_t j = 0; j < capacities.size(); ++j) {
    for (int c = 0; c < capacities[j]; ++c) slot_facility.push_back(static_cast<int>(j));
  }
  const int k = static_cast<int>(slot_facility.size());
  const double inf = std::numeric_limits<double>::infinity();
  auto cost = [&](int row, int slot) { return costs(row - 1, slot_facility[static_cast<std::size_t>(slot - 1)]); };

  // 1-based: row potentials u, slot potentials v, slot_row[s] = row matched to
  // slot s (0 = free). Slot 0 is the virtual root of each augmenting search.
  std::vector<double> u(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
  std::vector<int> slot_row(static_cast<std::size_t>(k) + 1, 0);
  std::vector<int> way(static_cast<std::size_t>(k) + 1, 0);
  std::vector<double> min_reduced(static_cast<std::size_t>(k) + 1);
  std::vector<char> used(static_cast<std::size_t>(k) + 1);

  for (int row = 1; row <= m; ++row) {
    slot_row[0] = row;
    int s0 = 0;
    std::fill(min_reduced.begin(), min_reduced.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[static_cast<std::size_t>(s0)] = 1;
      const int i0 = slot_row[static_cast<std::size_t>(s0)];
      double delta = inf;
      int s1 = 0;
      for (int s = 1; s <= k; ++s) {
        if (used[static_cast<std::size_t>(s)]) continue;
        const double reduced = cost(i0, s) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(s)];
        if (reduced < min_reduced[static_cast<std::size_t>(s)]) {
          min_reduced[static_cast<std::size_t>(s)] = reduced;
          way[static_cast<std::size_t>(s)] = s0;
        }
        if (min_reduced[static_cast<std::size_t>(s)] < delta) {
          delta = min_reduced[static_cast<std::size_t>(s)];
          s1 = s;
        }
      }
      for (int s = 0; s <= k; ++s) {
        if (used[static_cast<std::size_t>(s)]) {
          u[static_cast<std::size_t>(slot_row[static_cast<std::size_t>(s)])] += delta;
          v[static_cast<std::size_t>(s)] -= delta;
        } else {
          min_reduced[static_cast<std::size_t>(s)] -= delta;
        }
      }
      s0 = s1;
    } while (slot_row[static_cast<std::size_t>(s0)] != 0);
    do {
      const int s1 = way[static_cast<std::size_t>(s0)];
      slot_row[static_cast<std::size_t>(s0)] = slot_row[static_cast<std::size_t>(s1)];
      s0 = s1;
    } while (s0 != 0);
  }

  OptResult result;
  result.assignment.assign(static_cast<std::size_t>(m), -1);
  for (int s = 1; s <= k; ++s) {
    const int row = slot_row[static_cast<std::size_t>(s)];
    if (row != 0) {
      result.assignment[static_cast<std::size_t>(row - 1)] = slot_facility[static_cast<std::size_t>(s - 1)];
    }
  }
  fill_costs(costs, result);
  result.method = OptMethod::kMatching;
  return result;
}

OptResult solve_matching(const Scenario& scenario) {
  return solve_matching(cost_matrix(scenario), scenario.capacities);
}

double paper_bound(const Scenario& scenario) {
  const Shape& shape = scenario.shape;
  const double m = static_cast<double>(scenario.arrivals.size());
  switch (shape.kind()) {
    case ShapeKind::kEquilateralTriangle:
      return (m / 3.0) * (shape.primary_length() / 2.0);
    case ShapeKind::kRectangle:
      return std::min(shape.primary_length(), shape.secondary_length()) / 2.0;
    case ShapeKind::kRegularPolygon:
      return shape.primary_length() / 2.0;
    case ShapeKind::kFacilityRing:
      return (m / static_cast<double>(shape.facility_count())) * (shape.primary_length() / 2.0);
  }
  return 0.0;
}

double competitive_ratio(double greedy_total, double opt_total) {
  if (opt_total == 0.0) {
    return greedy_total == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return greedy_total / opt_total;
}

RunResult run_scenario(const Scenario& scenario) {
  validate(scenario);
  RunResult result;
  result.name = scenario.name;
  result.arrivals = scenario.arrivals;
  result.greedy = run_greedy(scenario);
  result.opt = static_cast<int>(scenario.arrivals.size()) <= kBruteForceLimit ? solve_bruteforce(scenario)
                                                                             : solve_matching(scenario);
  result.ratio = competitive_ratio(result.greedy.total_cost, result.opt.total_cost);
  return result;
}

}  // namespace polyassign
