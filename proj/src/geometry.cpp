#include "polyassign/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "polyassign/error.hpp"

namespace polyassign {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kUnsupportedMetric: return "unsupported_metric";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kCapacityExhausted: return "capacity_exhausted";
    case ErrorCode::kTooManyCustomers: return "too_many_customers";
    case ErrorCode::kNoClaims: return "no_claims";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kSchema: return "schema_error";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kEmptySession: return "empty_session";
  }
  return "unknown";
}

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kEquilateralTriangle: return "triangle";
    case ShapeKind::kRectangle: return "rectangle";
    case ShapeKind::kRegularPolygon: return "polygon";
    case ShapeKind::kFacilityRing: return "ring";
  }
  return "unknown";
}

std::string_view to_string(GapProfile profile) {
  switch (profile) {
    case GapProfile::kUniform: return "uniform";
    case GapProfile::kLinear: return "linear";
    case GapProfile::kExponential: return "exponential";
  }
  return "unknown";
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kCycle: return "cycle";
    case Metric::kPath: return "path";
    case Metric::kChord: return "chord";
  }
  return "unknown";
}

GapProfile parse_gap_profile(std::string_view text) {
  if (text == "uniform") return GapProfile::kUniform;
  if (text == "linear") return GapProfile::kLinear;
  if (text == "exponential") return GapProfile::kExponential;
  throw Error(ErrorCode::kInvalidArgument, "unknown gap profile '" + std::string(text) + "'");
}

Metric parse_metric(std::string_view text) {
  if (text == "cycle") return Metric::kCycle;
  if (text == "path") return Metric::kPath;
  if (text == "chord") return Metric::kChord;
  throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(text) + "'");
}

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be a positive finite length");
  }
}

// Index of the edge containing s on the closed loop; a site belongs to the
// edge it starts.
std::size_t edge_of(std::span<const double> sites, double s) {
  auto it = std::upper_bound(sites.begin(), sites.end(), s);
  return static_cast<std::size_t>(std::distance(sites.begin(), it)) - 1;
}

}  // namespace

Shape::Shape(ShapeKind kind, GapProfile profile, double a, double b, std::vector<double> edges)
    : kind_(kind), profile_(profile), a_(a), b_(b), edges_(std::move(edges)) {
  sites_.reserve(edges_.size());
  double s = 0.0;
  for (double e : edges_) {
    sites_.push_back(s);
    s += e;
  }
  circumference_ = s;

  if (kind_ != ShapeKind::kFacilityRing) {
    // Walk the edges turning left by the exterior angle at every corner.
    const double turn = 2.0 * std::numbers::pi / static_cast<double>(edges_.size());
    Point2 at{0.0, 0.0};
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      corners_.push_back(at);
      const double heading = turn * static_cast<double>(k);
      double cx = std::cos(heading);
      double cy = std::sin(heading);
      if (kind_ == ShapeKind::kRectangle) {
        // Axis-aligned walk; avoids cos(pi/2) residue.
        static constexpr double kDx[] = {1.0, 0.0, -1.0, 0.0};
        static constexpr double kDy[] = {0.0, 1.0, 0.0, -1.0};
        cx = kDx[k];
        cy = kDy[k];
      }
      at = Point2{at.x + edges_[k] * cx, at.y + edges_[k] * cy};
    }
  }
}

Shape Shape::triangle(double side) {
  require_positive(side, "triangle side");
  return Shape(ShapeKind::kEquilateralTriangle, GapProfile::kUniform, side, side, {side, side, side});
}

Shape Shape::rectangle(double width, double height) {
  require_positive(width, "rectangle width");
  require_positive(height, "rectangle height");
  return Shape(ShapeKind::kRectangle, GapProfile::kUniform, width, height,
               {width, height, width, height});
}

Shape Shape::polygon(int sides, double side) {
  if (sides < 3) throw Error(ErrorCode::kInvalidArgument, "polygon needs at least 3 sides");
  require_positive(side, "polygon side");
  return Shape(ShapeKind::kRegularPolygon, GapProfile::kUniform, side, side,
               std::vector<double>(static_cast<std::size_t>(sides), side));
}

Shape Shape::ring(GapProfile profile, double base_gap, int facilities) {
  if (facilities < 2) throw Error(ErrorCode::kInvalidArgument, "ring needs at least 2 facilities");
  if (profile == GapProfile::kExponential && facilities > 60) {
    throw Error(ErrorCode::kInvalidArgument, "exponential ring supports at most 60 facilities");
  }
  require_positive(base_gap, "ring base gap");
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(facilities));
  for (int k = 0; k + 1 < facilities; ++k) {
    switch (profile) {
      case GapProfile::kUniform: edges.push_back(base_gap); break;
      case GapProfile::kLinear: edges.push_back(base_gap * (k + 1)); break;
      case GapProfile::kExponential: edges.push_back(std::ldexp(base_gap, k)); break;
    }
  }
  edges.push_back(base_gap);
  return Shape(ShapeKind::kFacilityRing, profile, base_gap, base_gap, std::move(edges));
}

double Shape::perimeter() const {
  if (kind_ == ShapeKind::kFacilityRing) return circumference_ - edges_.back();
  return circumference_;
}

bool Shape::embeddable() const {
  return kind_ != ShapeKind::kFacilityRing || profile_ == GapProfile::kUniform;
}

double perimeter(const Shape& shape) { return shape.perimeter(); }

std::vector<BoundaryPoint> vertex_positions(const Shape& shape) {
  std::vector<BoundaryPoint> out;
  out.reserve(shape.sites().size());
  for (double s : shape.sites()) out.push_back(BoundaryPoint{s});
  return out;
}

double boundary_length(const Shape& shape, Metric metric) {
  if (metric == Metric::kPath && shape.kind() == ShapeKind::kFacilityRing) return shape.perimeter();
  return shape.circumference();
}

bool in_range(const Shape& shape, Metric metric, BoundaryPoint p) {
  if (!std::isfinite(p.s) || p.s < 0.0) return false;
  const double length = boundary_length(shape, metric);
  if (metric == Metric::kPath && shape.kind() == ShapeKind::kFacilityRing) return p.s <= length;
  return p.s < length;
}

void require_metric(const Shape& shape, Metric metric) {
  if (metric == Metric::kChord && !shape.embeddable()) {
    throw Error(ErrorCode::kUnsupportedMetric,
                "chord metric needs an embedding; " + std::string(to_string(shape.profile())) +
                    " rings have none");
  }
}

double distance(const Shape& shape, Metric metric, BoundaryPoint a, BoundaryPoint b) {
  switch (metric) {
    case Metric::kCycle: {
      const double delta = std::fabs(a.s - b.s);
      return std::min(delta, shape.circumference() - delta);
    }
    case Metric::kPath:
      return std::fabs(a.s - b.s);
    case Metric::kChord: {
      require_metric(shape, metric);
      if (a.s == b.s) return 0.0;
      const Point2 pa = embed(shape, a);
      const Point2 pb = embed(shape, b);
      return std::hypot(pa.x - pb.x, pa.y - pb.y);
    }
  }
  return 0.0;
}

Point2 embed(const Shape& shape, BoundaryPoint p) {
  if (!shape.embeddable()) {
    throw Error(ErrorCode::kUnsupportedMetric,
                "no planar embedding for a " + std::string(to_string(shape.profile())) + " ring");
  }
  const double length = shape.circumference();
  double s = std::fmod(p.s, length);
  if (s < 0.0) s += length;

  if (shape.kind() == ShapeKind::kFacilityRing) {
    const double radius = length / (2.0 * std::numbers::pi);
    const double angle = 2.0 * std::numbers::pi * s / length;
    return Point2{radius * std::sin(angle), radius * (1.0 - std::cos(angle))};
  }

  const std::size_t k = edge_of(shape.sites_, s);
  const Point2 from = shape.corners_[k];
  const Point2 to = shape.corners_[(k + 1) % shape.corners_.size()];
  const double t = (s - shape.sites_[k]) / shape.edges_[k];
  return Point2{from.x + t * (to.x - from.x), from.y + t * (to.y - from.y)};
}

}  // namespace polyassign
