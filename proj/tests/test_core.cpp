#include <gtest/gtest.h>

#include "splink/splink.hpp"

using namespace splink;

TEST(Rational, ParsesEveryNotation) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("3.5"), Rational(7, 2));
  EXPECT_EQ(parse_rational(".25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  EXPECT_EQ(parse_rational("10/4"), Rational(5, 2));
  EXPECT_EQ(parse_rational(" 1/3 "), Rational(1, 3));
}

TEST(Rational, RejectsGarbage) {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "/3", "1e", "--1"}) {
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
  }
}

TEST(Rational, PrintsLowestTerms) {
  EXPECT_EQ(to_string(Rational(7, 2)), "7/2");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_EQ(to_string(parse_rational(to_string(Rational(-22, 7)))), "-22/7");
}

TEST(Interval, ConstructionAndPredicates) {
  EXPECT_THROW(Interval(Rational(2), Rational(1)), std::exception);
  EXPECT_THROW(Interval(Rational(-1), Rational(1)), std::exception);
  EXPECT_TRUE(Interval::closed(2, 1).is_empty());
  const Interval i(1, 3);
  EXPECT_TRUE(i.contains(1));
  EXPECT_TRUE(i.contains(3));
  EXPECT_FALSE(i.contains(Rational(31, 10)));
  EXPECT_TRUE(Interval::point(4).is_point());
  EXPECT_EQ(to_string(Interval(Rational(3), Rational(5))), "[3,5]");
  EXPECT_EQ(to_string(Interval::empty()), "empty");
}

TEST(Interval, Intersection) {
  EXPECT_EQ(intersect(Interval(3, 5), Interval(0, 4)), Interval(3, 4));
  EXPECT_TRUE(intersect(Interval(0, 1), Interval(2, 3)).is_empty());
  EXPECT_EQ(intersect(Interval(0, 2), Interval(2, 3)), Interval::point(2));
  EXPECT_TRUE(intersect(Interval::empty(), Interval(0, 1)).is_empty());
}

TEST(IntervalSet, CanonicalForm) {
  const IntervalSet s({Interval(5, 7), Interval(0, 3), Interval(2, 4), Interval::empty()});
  ASSERT_EQ(s.members().size(), 2u);
  EXPECT_EQ(s.members()[0], Interval(0, 4));
  EXPECT_EQ(to_string(s), "[0,4] ∪ [5,7]");
  EXPECT_EQ(to_string(IntervalSet({Interval::point(3), Interval::point(5)})), "{3,5}");
  EXPECT_EQ(to_string(IntervalSet({Interval::point(1), Interval(3, 4)})), "{1} ∪ [3,4]");
  EXPECT_TRUE(s.intersects(Interval(4, 5)) == true);
  EXPECT_FALSE(IntervalSet({Interval::point(1), Interval::point(13)}).intersects(Interval(3, 5)));
}

TEST(Linkage, ValidationMessages) {
  Linkage l{{"a", "b", "a"}, {{"e", "a", "a", -1}, {"e", "a", "z", 1}}, TerminalPair{"a", "a"}};
  const auto errors = validate(l);
  auto has = [&](const std::string& needle) {
    return std::any_of(errors.begin(), errors.end(), [&](const auto& e) { return e.find(needle) != std::string::npos; });
  };
  EXPECT_TRUE(has("duplicate vertex"));
  EXPECT_TRUE(has("duplicate edge"));
  EXPECT_TRUE(has("loop"));
  EXPECT_TRUE(has("negative length"));
  EXPECT_TRUE(has("unknown vertex"));
  EXPECT_TRUE(has("terminals must be distinct"));
  EXPECT_THROW(require_valid(l), InvalidLinkage);
}

TEST(Linkage, ContractZeroEdges) {
  Linkage l{{"a", "b", "c"}, {{"ab", "a", "b", 0}, {"bc", "b", "c", 2}, {"ca", "c", "a", 2}}, TerminalPair{"b", "c"}};
  const Contraction c = contract_zero_edges(l);
  EXPECT_EQ(c.contracted_edges, 1u);
  EXPECT_EQ(c.representative.at("b"), "a");
  EXPECT_EQ(c.linkage.vertices, (std::vector<VertexId>{"a", "c"}));
  ASSERT_EQ(c.linkage.edges.size(), 2u);
  EXPECT_EQ(c.linkage.terminals, (TerminalPair{"a", "c"}));
}

TEST(Linkage, ContractionCreatingPositiveLoopIsUnrealisable) {
  Linkage l{{"a", "b"}, {{"z", "a", "b", 0}, {"x", "a", "b", 1}}, std::nullopt};
  EXPECT_THROW(contract_zero_edges(l), Unrealisable);
}

TEST(SPTree, SeriesConvention) {
  const SPTree left = SPTree::leaf("wv", "w", "v", 1);
  const SPTree right = SPTree::leaf("uw", "u", "w", 1);
  const SPTree s = SPTree::series(left, right);
  EXPECT_EQ(s.source, "u");
  EXPECT_EQ(s.sink, "v");
  EXPECT_EQ(s.join(), "w");
  EXPECT_THROW(SPTree::series(right, right), InvalidLinkage);
}

TEST(SPTree, ParallelFlattensAndReverses) {
  const SPTree a = SPTree::leaf("a", "s", "t", 1);
  const SPTree b = SPTree::leaf("b", "s", "t", 2);
  const SPTree c = SPTree::leaf("c", "s", "t", 3);
  const SPTree p = SPTree::parallel({SPTree::parallel({a, b}), c});
  EXPECT_EQ(p.children.size(), 3u);
  EXPECT_THROW(SPTree::parallel({a}), InvalidLinkage);
  const SPTree s = SPTree::series(SPTree::leaf("y", "j", "t", 2), SPTree::leaf("x", "s", "j", 1));
  const SPTree r = reversed(s);
  EXPECT_EQ(r.source, "t");
  EXPECT_EQ(r.sink, "s");
  EXPECT_EQ(r.right().edge_id, "y");
  EXPECT_EQ(leaf_edges(r).size(), 2u);
}

TEST(SPTree, DotEscapesLabels) {
  const SPTree t = SPTree::leaf("e\"1", "a", "b", 1);
  const std::string dot = to_dot(t);
  EXPECT_NE(dot.find("e\\\"1"), std::string::npos);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
}
