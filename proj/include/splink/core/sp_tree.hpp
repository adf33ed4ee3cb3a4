#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "splink/core/linkage.hpp"
#include "splink/core/rational.hpp"

namespace splink {

/// Decomposition tree of a two-terminal series-parallel linkage.
///
/// Series nodes follow the composition convention G1 o G2: `left()` is the
/// sink-side part (from the join vertex to the sink) and `right()` is the
/// source-side part (from the source to the join vertex). Parallel nodes have
/// two or more children sharing both terminals.
struct SPTree {
  enum class Kind { Leaf, Series, Parallel };

  Kind kind = Kind::Leaf;
  VertexId source;
  VertexId sink;
  EdgeId edge_id;  // Leaf only
  Rational length;  // Leaf only
  std::vector<SPTree> children;

  static SPTree leaf(EdgeId id, VertexId source, VertexId sink, Rational length) {
    SPTree t;
    t.kind = Kind::Leaf;
    t.edge_id = std::move(id);
    t.source = std::move(source);
    t.sink = std::move(sink);
    t.length = std::move(length);
    return t;
  }

  /// Series composition left o right; requires right.sink == left.source.
  static SPTree series(SPTree left, SPTree right) {
    if (right.sink != left.source) throw InvalidLinkage("series children do not share the join vertex");
    SPTree t;
    t.kind = Kind::Series;
    t.source = right.source;
    t.sink = left.sink;
    t.children.push_back(std::move(left));
    t.children.push_back(std::move(right));
    return t;
  }

  /// Parallel composition; nested parallel children with the same terminals are flattened.
  static SPTree parallel(std::vector<SPTree> parts) {
    if (parts.size() < 2) throw InvalidLinkage("parallel node needs at least two children");
    SPTree t;
    t.kind = Kind::Parallel;
    t.source = parts.front().source;
    t.sink = parts.front().sink;
    for (auto& p : parts) {
      if (p.source != t.source || p.sink != t.sink) throw InvalidLinkage("parallel children must share terminals");
      if (p.kind == Kind::Parallel) {
        for (auto& c : p.children) t.children.push_back(std::move(c));
      } else {
        t.children.push_back(std::move(p));
      }
    }
    return t;
  }

  bool is_leaf() const { return kind == Kind::Leaf; }
  bool is_series() const { return kind == Kind::Series; }
  bool is_parallel() const { return kind == Kind::Parallel; }

  const SPTree& left() const { return children.at(0); }
  const SPTree& right() const { return children.at(1); }
  const VertexId& join() const { return children.at(1).sink; }
};

/// The same tree with source and sink exchanged.
inline SPTree reversed(const SPTree& tree) {
  switch (tree.kind) {
    case SPTree::Kind::Leaf:
      return SPTree::leaf(tree.edge_id, tree.sink, tree.source, tree.length);
    case SPTree::Kind::Series:
      return SPTree::series(reversed(tree.right()), reversed(tree.left()));
    case SPTree::Kind::Parallel: {
      std::vector<SPTree> parts;
      for (const auto& c : tree.children) parts.push_back(reversed(c));
      return SPTree::parallel(std::move(parts));
    }
  }
  return tree;
}

/// Leaf edges in tree order.
inline std::vector<Edge> leaf_edges(const SPTree& tree) {
  std::vector<Edge> out;
  std::function<void(const SPTree&)> walk = [&](const SPTree& t) {
    if (t.is_leaf()) {
      out.push_back({t.edge_id, t.source, t.sink, t.length});
      return;
    }
    for (const auto& c : t.children) walk(c);
  };
  walk(tree);
  return out;
}

inline std::size_t count_nodes(const SPTree& tree) {
  std::size_t n = 1;
  for (const auto& c : tree.children) n += count_nodes(c);
  return n;
}

namespace detail {

inline std::string dot_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Graphviz rendering; every node is labelled with its kind and terminals.
inline std::string to_dot(const SPTree& tree) {
  std::ostringstream out;
  out << "digraph sptree {\n  node [shape=box, fontname=\"monospace\"];\n";
  int next = 0;
  std::function<int(const SPTree&)> emit = [&](const SPTree& t) {
    const int id = next++;
    out << "  n" << id << " [label=\"";
    switch (t.kind) {
      case SPTree::Kind::Leaf:
        out << "Leaf " << detail::dot_escape(t.edge_id) << " len=" << to_string(t.length);
        break;
      case SPTree::Kind::Series:
        out << "Series join=" << detail::dot_escape(t.join());
        break;
      case SPTree::Kind::Parallel:
        out << "Parallel";
        break;
    }
    out << "\\n(" << detail::dot_escape(t.source) << "," << detail::dot_escape(t.sink) << ")\"";
    if (t.is_leaf()) out << ", shape=ellipse";
    out << "];\n";
    for (const auto& c : t.children) {
      const int child = emit(c);
      out << "  n" << id << " -> n" << child << ";\n";
    }
    return id;
  };
  emit(tree);
  out << "}\n";
  return out.str();
}

}  // namespace splink
