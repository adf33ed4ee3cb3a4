#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splink/core/errors.hpp"
#include "splink/core/rational.hpp"

namespace splink {

using VertexId = std::string;
using EdgeId = std::string;
using TerminalPair = std::pair<VertexId, VertexId>;

struct Edge {
  EdgeId id;
  VertexId u;
  VertexId v;
  Rational length;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A weighted multigraph: parallel edges are allowed, loops are not.
struct Linkage {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::optional<TerminalPair> terminals;

  friend bool operator==(const Linkage&, const Linkage&) = default;
};

/// Returns one message per violated invariant; an empty list means the linkage is valid.
inline std::vector<std::string> validate(const Linkage& linkage) {
  std::vector<std::string> errors;
  std::set<VertexId> vertices;
  for (const auto& v : linkage.vertices) {
    if (!vertices.insert(v).second) errors.push_back("duplicate vertex id \"" + v + "\"");
  }
  std::set<EdgeId> edge_ids;
  for (const auto& e : linkage.edges) {
    if (!edge_ids.insert(e.id).second) errors.push_back("duplicate edge id \"" + e.id + "\"");
    if (e.u == e.v) errors.push_back("loop at edge \"" + e.id + "\"");
    if (e.length < 0) errors.push_back("negative length at edge \"" + e.id + "\"");
    for (const auto& end : {e.u, e.v}) {
      if (!vertices.contains(end)) errors.push_back("unknown vertex \"" + end + "\" at edge \"" + e.id + "\"");
    }
  }
  if (linkage.terminals) {
    const auto& [s, t] = *linkage.terminals;
    if (!vertices.contains(s) || !vertices.contains(t)) errors.push_back("terminal is not a vertex");
    if (s == t) errors.push_back("terminals must be distinct");
  }
  return errors;
}

inline void require_valid(const Linkage& linkage) {
  auto errors = validate(linkage);
  if (errors.empty()) return;
  std::string message = errors.front();
  for (std::size_t i = 1; i < errors.size(); ++i) message += "; " + errors[i];
  throw InvalidLinkage(message);
}

inline Rational total_length(const Linkage& linkage) {
  Rational sum = 0;
  for (const auto& e : linkage.edges) sum += e.length;
  return sum;
}

/// Sub-linkage spanned by the given edges, keeping the parent's vertex order.
inline Linkage edge_induced(const Linkage& parent, const std::vector<Edge>& edges) {
  std::set<VertexId> used;
  for (const auto& e : edges) {
    used.insert(e.u);
    used.insert(e.v);
  }
  Linkage out;
  for (const auto& v : parent.vertices) {
    if (used.contains(v)) out.vertices.push_back(v);
  }
  out.edges = edges;
  return out;
}

/// True when every vertex is reachable from the first one.
inline bool is_connected(const Linkage& linkage) {
  if (linkage.vertices.empty()) return true;
  std::map<VertexId, std::vector<VertexId>> adjacency;
  for (const auto& e : linkage.edges) {
    adjacency[e.u].push_back(e.v);
    adjacency[e.v].push_back(e.u);
  }
  std::set<VertexId> seen{linkage.vertices.front()};
  std::vector<VertexId> stack{linkage.vertices.front()};
  while (!stack.empty()) {
    auto v = std::move(stack.back());
    stack.pop_back();
    for (const auto& w : adjacency[v]) {
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == std::set<VertexId>(linkage.vertices.begin(), linkage.vertices.end()).size();
}

/// Result of identifying the endpoints of every zero-length edge.
struct Contraction {
  Linkage linkage;
  /// Original vertex id -> id of the vertex it was merged into.
  std::map<VertexId, VertexId> representative;
  std::size_t contracted_edges = 0;
};

/// Contracts every zero-length edge. Merged vertices are named after the
/// lexicographically smallest id of their class. Zero-length loops produced by
/// the contraction are dropped; a positive-length loop makes the linkage
/// unrealisable and raises Unrealisable.
inline Contraction contract_zero_edges(const Linkage& linkage) {
  std::map<VertexId, VertexId> parent;
  for (const auto& v : linkage.vertices) parent[v] = v;
  auto find = [&](VertexId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };

  Contraction out;
  for (const auto& e : linkage.edges) {
    if (e.length != 0) continue;
    ++out.contracted_edges;
    auto a = find(e.u);
    auto b = find(e.v);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }

  for (const auto& v : linkage.vertices) out.representative[v] = find(v);

  std::set<VertexId> kept;
  for (const auto& v : linkage.vertices) {
    const auto& rep = out.representative[v];
    if (kept.insert(rep).second) out.linkage.vertices.push_back(rep);
  }
  for (const auto& e : linkage.edges) {
    if (e.length == 0) continue;
    Edge mapped{e.id, out.representative[e.u], out.representative[e.v], e.length};
    if (mapped.u == mapped.v)
      throw Unrealisable("unrealisable: positive-length loop after contraction at edge \"" + e.id + "\"");
    out.linkage.edges.push_back(std::move(mapped));
  }
  if (linkage.terminals) {
    TerminalPair mapped{out.representative[linkage.terminals->first], out.representative[linkage.terminals->second]};
    if (mapped.first != mapped.second) out.linkage.terminals = mapped;
  }
  return out;
}

}  // namespace splink
