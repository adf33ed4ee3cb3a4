#include <gtest/gtest.h>

#include "support/generators.hpp"

using namespace splink;
using namespace splink::testing;

namespace {

// Distance between two intervals: the smallest |p - q| with p in I, q in J.
Rational gap(const Interval& i, const Interval& j) {
  if (!intersect(i, j).is_empty()) return 0;
  return i.hi() < j.lo() ? Rational(j.lo() - i.hi()) : Rational(i.lo() - j.hi());
}

// Reference composition: a triangle with sides p, q, x exists iff |p - q| <= x <= p + q,
// so the reachable x form [gap(I, J), b + d].
Interval compose_oracle(const Interval& i, const Interval& j) {
  if (i.is_empty() || j.is_empty()) return {};
  return {gap(i, j), i.hi() + j.hi()};
}

// Reference nabla: x is in nabla(P) iff x is in [P] and the polygon P + x is connected
// (a zero distance closes P itself).
bool nabla_oracle(const PathSpec& p, const Rational& x) {
  if (!path_range(p).contains(x)) return false;
  std::vector<Rational> polygon = p.lengths;
  if (x > 0) polygon.push_back(x);
  if (polygon.size() == 2) return true;  // x at either end of a two-edge range
  return polygon_status(polygon) == Status::Connected;
}

Interval random_interval(Rng& rng) {
  const Rational a = random_rational(rng, 0, 10, 6);
  const Rational b = random_rational(rng, 0, 10, 6);
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

TEST(SeriesCompose, Examples) {
  EXPECT_EQ(series_compose(Interval(3, 5), Interval(1, 2)), Interval(1, 7));
  EXPECT_EQ(series_compose(Interval(3, 4), Interval(7, 13)), Interval(3, 17));
  EXPECT_EQ(series_compose(Interval::point(1), Interval::point(4)), Interval(3, 5));
  EXPECT_TRUE(series_compose(Interval::empty(), Interval(0, 1)).is_empty());
}

TEST(SeriesCompose, MatchesTriangleOracle) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Interval a = random_interval(rng), b = random_interval(rng);
    ASSERT_EQ(series_compose(a, b), compose_oracle(a, b)) << to_string(a) << " " << to_string(b);
  }
}

TEST(PathRange, Examples) {
  EXPECT_EQ(path_range({{1, 1, 1}}), Interval(0, 3));
  EXPECT_EQ(path_range({{5, 4, 1, 1}}), Interval(0, 11));
  EXPECT_EQ(path_range({{10, 3}}), Interval(7, 13));
  EXPECT_EQ(path_range({{Rational(5, 2)}}), Interval::point(Rational(5, 2)));
  EXPECT_THROW(path_range({{}}), DomainError);
}

TEST(Nabla, Examples) {
  EXPECT_EQ(to_string(nabla({{1, 1, 1}})), "[1,3]");
  EXPECT_EQ(to_string(nabla({{4, 1}})), "{3,5}");
  EXPECT_EQ(to_string(nabla({{2, 2}})), "{0,4}");
  EXPECT_EQ(to_string(nabla({{7, 6}})), "{1,13}");
  // x = 6 closes (5,4,1,1) into the polygon (6,5,4,1,1), whose second and third
  // longest sides exceed half the perimeter.
  EXPECT_EQ(to_string(nabla({{5, 4, 1, 1}})), "[0,3] ∪ [7,11]");
  EXPECT_EQ(polygon_status({6, 5, 4, 1, 1}), Status::Disconnected);
  EXPECT_THROW(nabla({{3}}), DomainError);
  EXPECT_THROW(nabla({{3, 0}}), DomainError);
}

TEST(Nabla, MatchesPolygonOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    PathSpec p;
    const int k = std::uniform_int_distribution<int>(2, 6)(rng);
    for (int i = 0; i < k; ++i) p.lengths.push_back(random_rational(rng, 1, 8, 2));
    const IntervalSet set = nabla(p);
    const Interval range = path_range(p);
    // every breakpoint and the midpoints between them
    std::vector<Rational> probes{range.lo(), range.hi()};
    for (const auto& b : set.boundary()) probes.push_back(b);
    for (int i = 0; i < k; ++i) probes.push_back(p.lengths[i]);
    std::sort(probes.begin(), probes.end());
    const std::size_t n = probes.size();
    for (std::size_t i = 0; i + 1 < n; ++i) probes.push_back((probes[i] + probes[i + 1]) / 2);
    for (int i = 0; i < 20; ++i) probes.push_back(random_between(rng, range.lo(), range.hi()));
    for (const auto& x : probes) {
      if (!range.contains(x)) continue;
      ASSERT_EQ(set.contains(x), nabla_oracle(p, x))
          << "lengths " << join_rationals(p.lengths) << " x=" << to_string(x) << " nabla " << to_string(set);
    }
  }
}

TEST(PolygonStatus, Classification) {
  EXPECT_EQ(polygon_status({1, 1, 1, 1}), Status::Connected);
  EXPECT_EQ(polygon_status({1, 1, 1}), Status::Disconnected);
  EXPECT_EQ(polygon_status({1, 1, 3}), Status::Empty);
  EXPECT_EQ(polygon_status({1, 1, 2}), Status::Connected);  // flat, one configuration
  EXPECT_EQ(polygon_status({2, 2}), Status::Connected);
  EXPECT_EQ(polygon_status({2, 3}), Status::Empty);
  EXPECT_EQ(polygon_status({3, 1, 1, 1}), Status::Connected);
}
