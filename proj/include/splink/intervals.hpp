#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "splink/core/errors.hpp"
#include "splink/core/interval.hpp"
#include "splink/core/verdict.hpp"

namespace splink {

/// Edge lengths along a path, in order from source to sink.
struct PathSpec {
  std::vector<Rational> lengths;

  std::size_t k() const { return lengths.size(); }
  Rational total() const { return std::accumulate(lengths.begin(), lengths.end(), Rational(0)); }

  friend bool operator==(const PathSpec&, const PathSpec&) = default;
};

/// Set of terminal distances of a series composition:
/// [a,b] o [c,d] = [max{0, c-b, a-d}, b+d], and anything composed with the empty set is empty.
inline Interval series_compose(const Interval& first, const Interval& second) {
  if (first.is_empty() || second.is_empty()) return {};
  const Rational& a = first.lo();
  const Rational& b = first.hi();
  const Rational& c = second.lo();
  const Rational& d = second.hi();
  return {std::max({Rational(0), Rational(c - b), Rational(a - d)}), b + d};
}

/// Terminal-distance range of a path, as a left fold of series_compose over its edges.
inline Interval path_range_fold(const PathSpec& path) {
  if (path.lengths.empty()) throw DomainError("path must have at least one edge");
  Interval acc = Interval::point(path.lengths.front());
  for (std::size_t i = 1; i < path.lengths.size(); ++i) acc = series_compose(acc, Interval::point(path.lengths[i]));
  return acc;
}

/// Closed form of the path range: [max(0, 2 max l - S), S].
inline Interval path_range_closed_form(const PathSpec& path) {
  if (path.lengths.empty()) throw DomainError("path must have at least one edge");
  const Rational total = path.total();
  const Rational longest = *std::max_element(path.lengths.begin(), path.lengths.end());
  return {std::max(Rational(0), Rational(2 * longest - total)), total};
}

/// Range of terminal distances over all planar configurations of the path.
/// Both derivations are evaluated; they must agree.
inline Interval path_range(const PathSpec& path) {
  Interval closed = path_range_closed_form(path);
  if (closed != path_range_fold(path)) throw DomainError("path range fold disagrees with closed form");
  return closed;
}

/// Terminal distances x for which the configurations of the path with
/// |p(s) - p(t)| = x form a connected set.
///
/// k = 2 gives the two extreme distances. For k >= 3, with lengths sorted
/// l1 >= l2 >= ... and total S, adjoining an edge of length x closes the path
/// into a polygon whose space is connected exactly when the second and third
/// longest of {l_i} u {x} sum to at most (S + x) / 2. Splitting on where x falls
/// in the sorted order gives
///   x <= l3:        [2(l2+l3) - S, l3]
///   l3 <= x <= l1:  [l3, min(l1, S - 2 l2)]
///   x >= l1:        [max(l1, 2(l1+l2) - S), S]
/// each intersected with the path range.
inline IntervalSet nabla(const PathSpec& path) {
  if (path.k() < 2) throw DomainError("nabla is undefined for k=1");
  for (const auto& l : path.lengths) {
    if (l <= 0) throw DomainError("nabla requires positive lengths");
  }
  const Interval range = path_range(path);
  if (path.k() == 2) {
    return IntervalSet({Interval::point(range.lo()), Interval::point(range.hi())});
  }

  std::vector<Rational> l = path.lengths;
  std::sort(l.begin(), l.end(), std::greater<>());
  const Rational total = path.total();

  auto clipped = [&](const Rational& lo, const Rational& hi) {
    return Interval::closed(std::max(lo, range.lo()), std::min(hi, range.hi()));
  };
  return IntervalSet({
      clipped(2 * (l[1] + l[2]) - total, l[2]),
      clipped(l[2], std::min(l[0], Rational(total - 2 * l[1]))),
      clipped(std::max(l[0], Rational(2 * (l[0] + l[1]) - total)), total),
  });
}

/// Classifies a closed polygon by its edge lengths: empty when the longest edge
/// exceeds half the perimeter, connected when the second and third longest sum
/// to at most half the perimeter, disconnected otherwise. A two-edge polygon is
/// a doubled bar: realisable (as a single point) only when both lengths agree.
inline Status polygon_status(std::vector<Rational> lengths) {
  if (lengths.size() < 2) throw DomainError("polygon needs at least two edges");
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  if (lengths.size() == 2) return lengths[0] == lengths[1] ? Status::Connected : Status::Empty;
  const Rational total = std::accumulate(lengths.begin(), lengths.end(), Rational(0));
  if (2 * lengths[0] > total) return Status::Empty;
  if (2 * (lengths[1] + lengths[2]) <= total) return Status::Connected;
  return Status::Disconnected;
}

}  // namespace splink
