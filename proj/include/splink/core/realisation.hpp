#pragma once

#include <map>

#include "splink/core/linkage.hpp"
#include "splink/core/rational.hpp"

namespace splink {

struct Point {
  double x = 0;
  double y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Planar coordinates for every vertex, normalised so that the source sits at
/// the origin and the sink on the nonnegative x-axis.
struct Realisation {
  Rational distance;
  std::map<VertexId, Point> placement;
};

}  // namespace splink
