#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splink/core/errors.hpp"
#include "splink/core/rational.hpp"

namespace splink {

/// Closed bounded interval [lo, hi] with 0 <= lo <= hi, or the empty set.
class Interval {
 public:
  /// The empty interval.
  Interval() = default;

  Interval(Rational lo, Rational hi) : bounds_(std::in_place, std::move(lo), std::move(hi)) {
    if (bounds_->first < 0 || bounds_->first > bounds_->second)
      throw DomainError("interval requires 0 <= lo <= hi");
  }

  static Interval empty() { return {}; }
  static Interval point(const Rational& x) { return {x, x}; }

  /// [lo, hi] with the convention that hi < lo denotes the empty set.
  static Interval closed(const Rational& lo, const Rational& hi) {
    if (hi < lo) return {};
    return {lo, hi};
  }

  bool is_empty() const { return !bounds_.has_value(); }
  explicit operator bool() const { return bounds_.has_value(); }

  const Rational& lo() const { return bounds_.value().first; }
  const Rational& hi() const { return bounds_.value().second; }
  Rational width() const { return is_empty() ? Rational(0) : Rational(hi() - lo()); }
  bool is_point() const { return bounds_ && bounds_->first == bounds_->second; }

  bool contains(const Rational& x) const { return bounds_ && bounds_->first <= x && x <= bounds_->second; }

  friend bool operator==(const Interval& a, const Interval& b) { return a.bounds_ == b.bounds_; }

 private:
  std::optional<std::pair<Rational, Rational>> bounds_;
};

/// Set intersection of two closed intervals.
inline Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return {};
  return Interval::closed(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

inline std::string to_string(const Interval& interval) {
  if (interval.is_empty()) return "empty";
  return "[" + to_string(interval.lo()) + "," + to_string(interval.hi()) + "]";
}

/// Finite union of closed intervals kept in canonical form: sorted, pairwise
/// disjoint and non-touching. Degenerate one-point members are allowed.
class IntervalSet {
 public:
  IntervalSet() = default;

  explicit IntervalSet(std::vector<Interval> pieces) {
    std::erase_if(pieces, [](const Interval& i) { return i.is_empty(); });
    std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
      return a.lo() < b.lo() || (a.lo() == b.lo() && a.hi() < b.hi());
    });
    for (auto& piece : pieces) {
      if (!members_.empty() && piece.lo() <= members_.back().hi()) {
        members_.back() = Interval(members_.back().lo(), std::max(members_.back().hi(), piece.hi()));
      } else {
        members_.push_back(std::move(piece));
      }
    }
  }

  const std::vector<Interval>& members() const { return members_; }
  bool is_empty() const { return members_.empty(); }

  bool contains(const Rational& x) const {
    return std::any_of(members_.begin(), members_.end(), [&](const Interval& m) { return m.contains(x); });
  }

  bool intersects(const Interval& interval) const {
    return std::any_of(members_.begin(), members_.end(),
                       [&](const Interval& m) { return !intersect(m, interval).is_empty(); });
  }

  IntervalSet intersected_with(const Interval& interval) const {
    std::vector<Interval> out;
    for (const auto& m : members_) out.push_back(intersect(m, interval));
    return IntervalSet(std::move(out));
  }

  /// Every finite endpoint of every member; these are the places where membership can change.
  std::vector<Rational> boundary() const {
    std::vector<Rational> out;
    for (const auto& m : members_) {
      out.push_back(m.lo());
      if (m.hi() != m.lo()) out.push_back(m.hi());
    }
    return out;
  }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) { return a.members_ == b.members_; }

 private:
  std::vector<Interval> members_;
};

/// "empty", "{3,5}" when every member is a point, otherwise "[0,3] ∪ [7,11]".
inline std::string to_string(const IntervalSet& set) {
  if (set.is_empty()) return "empty";
  const auto& members = set.members();
  const bool all_points = std::all_of(members.begin(), members.end(), [](const Interval& m) { return m.is_point(); });
  std::string out;
  if (all_points) {
    out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) out += ",";
      out += to_string(members[i].lo());
    }
    return out + "}";
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += " ∪ ";
    out += members[i].is_point() ? "{" + to_string(members[i].lo()) + "}" : to_string(members[i]);
  }
  return out;
}

}  // namespace splink
