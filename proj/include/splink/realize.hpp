#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "splink/analysis.hpp"
#include "splink/core/errors.hpp"
#include "splink/core/realisation.hpp"
#include "splink/core/sp_tree.hpp"
#include "splink/sp_decompose.hpp"

namespace splink {

/// Terminal-distance range of every node of a tree, keyed by node address.
class RangeTable {
 public:
  explicit RangeTable(const SPTree& root) { fill(root); }

  const Interval& at(const SPTree& node) const { return ranges_.at(&node); }

 private:
  Interval fill(const SPTree& node) {
    Interval out;
    switch (node.kind) {
      case SPTree::Kind::Leaf:
        out = Interval::point(node.length);
        break;
      case SPTree::Kind::Series:
        out = series_compose(fill(node.left()), fill(node.right()));
        break;
      case SPTree::Kind::Parallel:
        out = fill(node.children.front());
        for (std::size_t i = 1; i < node.children.size(); ++i) out = intersect(out, fill(node.children[i]));
        break;
    }
    ranges_[&node] = out;
    return out;
  }

  std::map<const SPTree*, Interval> ranges_;
};

/// Feasible distances z from the join vertex to the sink of a series node
/// whose source-side part has range [a,b], sink-side part range [c,d], and
/// whose terminals are x apart.
inline Interval sink_side_choices(const Interval& source_side, const Interval& sink_side, const Rational& x) {
  const Rational& a = source_side.lo();
  const Rational& b = source_side.hi();
  return Interval::closed(std::max({sink_side.lo(), Rational(a - x), Rational(x - b)}),
                          std::min(sink_side.hi(), Rational(x + b)));
}

/// Feasible distances y from the source to the join vertex once z is fixed.
inline Interval source_side_choices(const Interval& source_side, const Rational& x, const Rational& z) {
  return Interval::closed(std::max(source_side.lo(), abs(Rational(x - z))), std::min(source_side.hi(), Rational(x + z)));
}

/// Midpoint choices, apex above the source-sink line, zero angle when the
/// terminals coincide.
struct MidpointChooser {
  Rational distance(const Interval& feasible) { return (feasible.lo() + feasible.hi()) / 2; }
  int side(const SPTree&) { return 1; }
  double angle(const SPTree&) { return 0.0; }
  void observe(const SPTree&, const Rational&, const Rational&, const Rational&, int) {}
};

namespace detail {

/// Places every vertex of `node` given the positions of its terminals, which
/// are exactly `x` apart. Series nodes put the join vertex at the apex of the
/// triangle with sides x, y (source side) and z (sink side).
template <class Chooser>
void place(const SPTree& node, const Rational& x, Point s, Point t, const RangeTable& ranges, Chooser& chooser,
           std::map<VertexId, Point>& out) {
  out[node.source] = s;
  out[node.sink] = t;
  switch (node.kind) {
    case SPTree::Kind::Leaf:
      return;
    case SPTree::Kind::Parallel:
      for (const auto& child : node.children) place(child, x, s, t, ranges, chooser, out);
      return;
    case SPTree::Kind::Series: {
      const Interval& source_side = ranges.at(node.right());
      const Interval& sink_side = ranges.at(node.left());
      const Interval z_choices = sink_side_choices(source_side, sink_side, x);
      if (z_choices.is_empty()) throw OutOfRange("x out of range at series node joined at " + node.join());
      const Rational z = chooser.distance(z_choices);
      const Interval y_choices = source_side_choices(source_side, x, z);
      if (y_choices.is_empty()) throw OutOfRange("x out of range at series node joined at " + node.join());
      const Rational y = chooser.distance(y_choices);

      Point j;
      int side = 0;
      if (x == 0) {
        const double phi = chooser.angle(node);
        const double r = to_double(y);
        j = {s.x + r * std::cos(phi), s.y + r * std::sin(phi)};
      } else {
        side = chooser.side(node);
        const Rational along = (x * x + y * y - z * z) / (2 * x);
        const Rational height_sq = y * y - along * along;
        const double height = height_sq > 0 ? std::sqrt(to_double(height_sq)) : 0.0;
        const double xd = to_double(x);
        const Point e1{(t.x - s.x) / xd, (t.y - s.y) / xd};
        const Point e2{-e1.y, e1.x};
        const double a = to_double(along);
        const double h = side * height;
        j = {s.x + a * e1.x + h * e2.x, s.y + a * e1.y + h * e2.y};
      }
      chooser.observe(node, x, y, z, side);
      place(node.right(), y, s, j, ranges, chooser, out);
      place(node.left(), z, j, t, ranges, chooser, out);
      return;
    }
  }
}

}  // namespace detail

/// Builds a realisation of the tree's linkage with terminal distance x.
/// The source is placed at the origin and the sink at (x, 0).
template <class Chooser = MidpointChooser>
Realisation synthesize(const SPTree& tree, const Rational& x, Chooser chooser = {}) {
  const RangeTable ranges(tree);
  if (!ranges.at(tree).contains(x))
    throw OutOfRange("x out of range: " + to_string(x) + " not in " + to_string(ranges.at(tree)));
  Realisation r;
  r.distance = x;
  detail::place(tree, x, Point{0, 0}, Point{to_double(x), 0}, ranges, chooser, r.placement);
  return r;
}

/// Realisation of a whole linkage with the given terminals at distance x.
/// Zero-length edges are contracted before synthesis and their endpoints
/// share a position.
inline Realisation realize(const Linkage& linkage, const Rational& x,
                           const std::optional<TerminalPair>& terminals = std::nullopt) {
  require_valid(linkage);
  const Contraction contraction = contract_zero_edges(linkage);
  std::optional<TerminalPair> mapped;
  const auto wanted = terminals ? terminals : linkage.terminals;
  if (wanted) {
    mapped = TerminalPair{contraction.representative.at(wanted->first), contraction.representative.at(wanted->second)};
    if (mapped->first == mapped->second) throw DomainError("terminals are merged by zero-length edges");
  }
  const SPTree tree = build_sp_tree(contraction.linkage, mapped);
  Realisation r = synthesize(tree, x);
  Realisation out;
  out.distance = r.distance;
  for (const auto& v : linkage.vertices) out.placement[v] = r.placement.at(contraction.representative.at(v));
  return out;
}

/// Largest relative edge-length error | |p(u)-p(v)| - l | / max(l, 1).
inline double verify(const Linkage& linkage, const Realisation& realisation) {
  double worst = 0;
  for (const auto& e : linkage.edges) {
    const auto pu = realisation.placement.find(e.u);
    const auto pv = realisation.placement.find(e.v);
    if (pu == realisation.placement.end() || pv == realisation.placement.end())
      throw DomainError("missing vertex at edge \"" + e.id + "\"");
    const double d = std::hypot(pu->second.x - pv->second.x, pu->second.y - pv->second.y);
    const double l = to_double(e.length);
    worst = std::max(worst, std::abs(d - l) / std::max(l, 1.0));
  }
  return worst;
}

}  // namespace splink
