#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "polyassign/geometry.hpp"
#include "polyassign/scenario.hpp"

namespace polyassign::testing {

inline constexpr std::array<ShapeKind, 4> kShapeKinds = {ShapeKind::kEquilateralTriangle, ShapeKind::kRectangle,
                                                         ShapeKind::kRegularPolygon, ShapeKind::kFacilityRing};
inline constexpr std::array<Metric, 3> kMetrics = {Metric::kCycle, Metric::kPath, Metric::kChord};

// Random instances whose side lengths and arrival coordinates are dyadic, so
// boundary arithmetic under Cycle/Path stays exact in binary floating point.
class InstanceGen {
 public:
  explicit InstanceGen(std::uint64_t seed) : rng_(seed) {}

  template <typename T>
  const T& pick(const std::vector<T>& options) {
    return options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng_)];
  }

  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Shape shape(ShapeKind kind, bool chord_capable = false) {
    switch (kind) {
      case ShapeKind::kEquilateralTriangle:
        return Shape::triangle(pick<double>({0.5, 1.0, 2.0, 3.0}));
      case ShapeKind::kRectangle:
        return Shape::rectangle(pick<double>({0.5, 1.0, 1.5, 2.0}), pick<double>({0.5, 1.0, 1.5, 2.0}));
      case ShapeKind::kRegularPolygon:
        return Shape::polygon(uniform_int(3, 8), pick<double>({0.5, 1.0, 2.0}));
      case ShapeKind::kFacilityRing: {
        const GapProfile profile =
            chord_capable ? GapProfile::kUniform
                          : pick<GapProfile>({GapProfile::kUniform, GapProfile::kLinear, GapProfile::kExponential});
        return Shape::ring(profile, pick<double>({0.5, 1.0}), uniform_int(2, 6));
      }
    }
    return Shape::triangle(1.0);
  }

  // A point on the k/64 grid of the metric's coordinate range.
  BoundaryPoint point(const Shape& shape, Metric metric) {
    const double length = boundary_length(shape, metric);
    const bool closed_end = metric == Metric::kPath && shape.kind() == ShapeKind::kFacilityRing;
    return BoundaryPoint{length * uniform_int(0, closed_end ? 64 : 63) / 64.0};
  }

  Scenario scenario(ShapeKind kind, Metric metric, int max_customers) {
    Scenario sc;
    sc.name = "random";
    sc.shape = shape(kind, metric == Metric::kChord);
    sc.metric = metric;
    for (int j = 0; j < sc.shape.facility_count(); ++j) sc.capacities.push_back(uniform_int(1, 3));
    const int m = uniform_int(1, std::min(max_customers, total_capacity(sc.capacities)));
    for (int i = 0; i < m; ++i) sc.arrivals.push_back(point(sc.shape, metric));
    return sc;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace polyassign::testing
