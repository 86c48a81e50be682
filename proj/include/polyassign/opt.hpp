#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyassign/engine.hpp"
#include "polyassign/scenario.hpp"

namespace polyassign {

// Dense customers x facilities cost table, row-major.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

CostMatrix cost_matrix(const Scenario& scenario);

enum class OptMethod { kBruteForce, kMatching };
std::string_view to_string(OptMethod method);

struct OptResult {
  std::vector<int> assignment;  // customer -> facility id
  std::vector<double> costs;    // customer -> distance to its facility
  double total_cost = 0.0;      // summed in customer order
  OptMethod method = OptMethod::kMatching;

  friend bool operator==(const OptResult&, const OptResult&) = default;
};

inline constexpr int kBruteForceLimit = 9;

// Exhaustive branch-and-bound over capacity-respecting assignments. Returns the
// lexicographically smallest assignment among those of minimal total.
// Throws kTooManyCustomers above kBruteForceLimit customers.
OptResult solve_bruteforce(const CostMatrix& costs, std::span<const int> capacities);
OptResult solve_bruteforce(const Scenario& scenario);

// Expands every facility into `capacity` slots and solves the rectangular
// assignment customers x slots by successive shortest augmenting paths with
// vertex potentials (Hungarian method), O(m^2 * slots).
OptResult solve_matching(const CostMatrix& costs, std::span<const int> capacities);
OptResult solve_matching(const Scenario& scenario);

// Analytic lower bound on OPT that the construction's lemma states for the
// shape kind. Informational; it is not a valid bound for every instance.
double paper_bound(const Scenario& scenario);

// Greedy and OPT side by side for one scenario.
struct RunResult {
  std::string name;
  std::vector<BoundaryPoint> arrivals;
  AssignmentRecord greedy;
  OptResult opt;
  double ratio = 1.0;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

// greedy / opt with 0/0 -> 1 and x/0 -> +inf for x > 0.
double competitive_ratio(double greedy_total, double opt_total);

// Uses brute force when the instance is small enough, matching otherwise.
RunResult run_scenario(const Scenario& scenario);

}  // namespace polyassign
