#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polyassign/scenario.hpp"

namespace polyassign {

// The adversarial constructions with known claimed costs.
enum class PaperCase {
  kTriangleLB,
  kTriangleExact,
  kRectangleLB,
  kPolygonLB,
  kCircleUniform,
  kCircleLinear,
  kCircleExponential,
};

std::string_view case_name(PaperCase c);
bool case_takes_n(PaperCase c);
const std::vector<PaperCase>& all_cases();

struct CaseParams {
  int n = 0;           // facility count, n-cases only
  double d = 1.0;      // side / base gap
  double S = 1.0;      // triangle side
  double epsilon = 0.0;

  friend bool operator==(const CaseParams&, const CaseParams&) = default;
};

struct CaseSpec {
  PaperCase which = PaperCase::kTriangleLB;
  CaseParams params;

  friend bool operator==(const CaseSpec&, const CaseSpec&) = default;
};

// Grammar: name[:key=value(,key=value)*] with keys n, d, S, eps, e.g.
// "polygon-lb:n=8,d=1". Throws kInvalidArgument on malformed input.
CaseSpec parse_case_spec(std::string_view text);

// Canonical spelling; parse_case_spec(to_string(spec)) == spec.
std::string to_string(const CaseSpec& spec);

// Moves `point` by `epsilon` along the boundary in the direction that brings
// it closer to facility `toward`. Requires 0 <= epsilon < half the shortest
// gap; a point already on the facility is returned unchanged.
BoundaryPoint nudge(const Shape& shape, Metric metric, BoundaryPoint point, int toward, double epsilon);

Scenario build(PaperCase which, const CaseParams& params);
inline Scenario build(const CaseSpec& spec) { return build(spec.which, spec.params); }

// One representative spec per case, as offered to interactive clients.
std::vector<std::string> preset_case_specs();

}  // namespace polyassign
