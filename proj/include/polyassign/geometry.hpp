#pragma once

#include <compare>
#include <span>
#include <string_view>
#include <vector>

namespace polyassign {

enum class ShapeKind { kEquilateralTriangle, kRectangle, kRegularPolygon, kFacilityRing };
enum class GapProfile { kUniform, kLinear, kExponential };

// Cycle: shortest arc around the closed boundary. Path: arc distance without
// wrapping across s = 0. Chord: straight line between embedded points.
enum class Metric { kCycle, kPath, kChord };

std::string_view to_string(ShapeKind kind);
std::string_view to_string(GapProfile profile);
std::string_view to_string(Metric metric);
GapProfile parse_gap_profile(std::string_view text);
Metric parse_metric(std::string_view text);

// Arc-length coordinate on a shape boundary, measured counterclockwise from
// facility site 0.
struct BoundaryPoint {
  double s = 0.0;

  friend auto operator<=>(const BoundaryPoint&, const BoundaryPoint&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// A boundary with one facility site per vertex. Every shape is stored as a
// closed loop of edges: edge k runs from site k to site k+1 (mod n).
//
// A FacilityRing with n facilities has the n-1 profile gaps followed by a
// closing gap equal to the base gap d, so the Uniform ring is isometric to the
// regular n-gon with side d. Its perimeter() is the open chain length (sum of
// the n-1 profile gaps); circumference() includes the closing gap.
class Shape {
 public:
  static Shape triangle(double side);
  static Shape rectangle(double width, double height);
  static Shape square(double side) { return rectangle(side, side); }
  static Shape polygon(int sides, double side);
  static Shape ring(GapProfile profile, double base_gap, int facilities);

  ShapeKind kind() const { return kind_; }
  GapProfile profile() const { return profile_; }
  int facility_count() const { return static_cast<int>(sites_.size()); }

  // Triangle side S, polygon side d, ring base gap d, rectangle width.
  double primary_length() const { return a_; }
  // Rectangle height; equal to primary_length() for the other kinds.
  double secondary_length() const { return b_; }

  std::span<const double> edges() const { return edges_; }
  std::span<const double> sites() const { return sites_; }

  double perimeter() const;
  double circumference() const { return circumference_; }

  // Whether embed() and the Chord metric are defined.
  bool embeddable() const;

  friend bool operator==(const Shape& lhs, const Shape& rhs) {
    return lhs.kind_ == rhs.kind_ && lhs.profile_ == rhs.profile_ && lhs.a_ == rhs.a_ &&
           lhs.b_ == rhs.b_ && lhs.sites_.size() == rhs.sites_.size();
  }

 private:
  Shape(ShapeKind kind, GapProfile profile, double a, double b, std::vector<double> edges);

  ShapeKind kind_;
  GapProfile profile_;
  double a_;
  double b_;
  std::vector<double> edges_;
  std::vector<double> sites_;
  std::vector<Point2> corners_;
  double circumference_ = 0.0;

  friend Point2 embed(const Shape& shape, BoundaryPoint p);
};

double perimeter(const Shape& shape);

// Facility sites: polygon vertices counterclockwise from s = 0, or the
// cumulative gap sums of a FacilityRing.
std::vector<BoundaryPoint> vertex_positions(const Shape& shape);

// Length of the coordinate range a metric accepts: the open chain for Path on
// a FacilityRing, the closed loop otherwise.
double boundary_length(const Shape& shape, Metric metric);

// Closed shapes accept [0, L); the Path metric on a FacilityRing accepts [0, L].
bool in_range(const Shape& shape, Metric metric, BoundaryPoint p);

// Throws kUnsupportedMetric for Chord on a shape without an embedding.
void require_metric(const Shape& shape, Metric metric);

double distance(const Shape& shape, Metric metric, BoundaryPoint a, BoundaryPoint b);

// Vertex 0 sits at the origin and the first edge runs along +x. A Uniform ring
// lies on a circle of circumference n*d tangent to the x axis at the origin.
Point2 embed(const Shape& shape, BoundaryPoint p);

}  // namespace polyassign
