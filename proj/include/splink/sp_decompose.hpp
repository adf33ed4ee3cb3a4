#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splink/core/errors.hpp"
#include "splink/core/linkage.hpp"
#include "splink/core/sp_tree.hpp"
#include "splink/intervals.hpp"

namespace splink {

// ---------------------------------------------------------------------------
// Biconnected blocks
// ---------------------------------------------------------------------------

/// Splits a connected multigraph into its 2-connected blocks. Every edge lands
/// in exactly one block; a bridge is a block of its own. Blocks are emitted in
/// the order a depth-first search from the first vertex closes them.
inline std::vector<Linkage> biconnected_blocks(const Linkage& linkage) {
  if (!is_connected(linkage)) throw DisconnectedGraph();
  if (linkage.edges.empty()) return {};

  std::map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < linkage.vertices.size(); ++i) index[linkage.vertices[i]] = i;
  const std::size_t n = linkage.vertices.size();

  // adjacency: (neighbour, edge index)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(n);
  for (std::size_t e = 0; e < linkage.edges.size(); ++e) {
    const auto u = index.at(linkage.edges[e].u);
    const auto v = index.at(linkage.edges[e].v);
    adjacency[u].push_back({v, e});
    adjacency[v].push_back({u, e});
  }

  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(n, unvisited), low(n, 0);
  std::vector<std::size_t> edge_stack;
  std::vector<bool> edge_seen(linkage.edges.size(), false);
  std::vector<Linkage> blocks;

  struct Frame {
    std::size_t vertex;
    std::size_t parent_edge;
    std::size_t next = 0;
  };
  std::size_t counter = 0;
  std::vector<Frame> stack;
  order[0] = low[0] = counter++;
  stack.push_back({0, unvisited});

  while (!stack.empty()) {
    Frame& frame = stack.back();
    const std::size_t v = frame.vertex;
    if (frame.next < adjacency[v].size()) {
      const auto [w, e] = adjacency[v][frame.next++];
      if (e == frame.parent_edge) continue;
      if (order[w] == unvisited) {
        edge_seen[e] = true;
        edge_stack.push_back(e);
        order[w] = low[w] = counter++;
        stack.push_back({w, e});
      } else if (!edge_seen[e]) {
        edge_seen[e] = true;
        edge_stack.push_back(e);
        low[v] = std::min(low[v], order[w]);
      }
      continue;
    }
    const std::size_t parent_edge = frame.parent_edge;
    stack.pop_back();
    if (stack.empty()) break;
    const std::size_t u = stack.back().vertex;
    low[u] = std::min(low[u], low[v]);
    if (low[v] >= order[u]) {
      std::vector<std::size_t> block_edges;
      while (true) {
        const std::size_t top = edge_stack.back();
        edge_stack.pop_back();
        block_edges.push_back(top);
        if (top == parent_edge) break;
      }
      std::sort(block_edges.begin(), block_edges.end());
      std::vector<Edge> edges;
      for (auto e : block_edges) edges.push_back(linkage.edges[e]);
      blocks.push_back(edge_induced(linkage, edges));
    }
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// Series-parallel recognition by reduction
// ---------------------------------------------------------------------------

namespace detail {

struct Arc {
  VertexId a;
  VertexId b;
  SPTree tree;  // oriented a -> b
  std::size_t key;  // smallest original edge position it contains
  bool alive = true;
};

inline SPTree oriented(const Arc& arc, const VertexId& from) {
  return arc.a == from ? arc.tree : reversed(arc.tree);
}

/// Exhaustive series/parallel reduction with fixed terminals. Returns the
/// decomposition tree oriented s -> t, or nothing when the graph does not
/// reduce to a single s-t edge.
inline std::optional<SPTree> reduce_to_tree(const Linkage& linkage, const VertexId& s, const VertexId& t) {
  if (linkage.edges.empty() || s == t) return std::nullopt;
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < linkage.edges.size(); ++i) {
    const auto& e = linkage.edges[i];
    arcs.push_back({e.u, e.v, SPTree::leaf(e.id, e.u, e.v, e.length), i});
  }
  std::set<VertexId> live(linkage.vertices.begin(), linkage.vertices.end());
  if (!live.contains(s) || !live.contains(t)) return std::nullopt;

  while (true) {
    // Parallel reductions: merge every group of arcs with the same endpoints.
    std::map<std::pair<VertexId, VertexId>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (!arcs[i].alive) continue;
      groups[std::minmax(arcs[i].a, arcs[i].b)].push_back(i);
    }
    bool changed = false;
    for (auto& [ends, members] : groups) {
      if (members.size() < 2) continue;
      std::sort(members.begin(), members.end(), [&](auto x, auto y) { return arcs[x].key < arcs[y].key; });
      const VertexId from = arcs[members.front()].a;
      const VertexId to = arcs[members.front()].b;
      std::vector<SPTree> parts;
      for (auto m : members) {
        parts.push_back(oriented(arcs[m], from));
        arcs[m].alive = false;
      }
      arcs.push_back({from, to, SPTree::parallel(std::move(parts)), arcs[members.front()].key});
      changed = true;
    }
    if (changed) continue;

    // Series reduction at the first non-terminal vertex of degree two.
    std::map<VertexId, std::vector<std::size_t>> incident;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (!arcs[i].alive) continue;
      incident[arcs[i].a].push_back(i);
      incident[arcs[i].b].push_back(i);
    }
    for (const auto& v : linkage.vertices) {
      if (v == s || v == t || !live.contains(v)) continue;
      const auto it = incident.find(v);
      if (it == incident.end() || it->second.size() != 2) continue;
      auto first = it->second[0];
      auto second = it->second[1];
      if (arcs[second].key < arcs[first].key) std::swap(first, second);
      const VertexId x = arcs[first].a == v ? arcs[first].b : arcs[first].a;
      const VertexId y = arcs[second].a == v ? arcs[second].b : arcs[second].a;
      SPTree source_side = reversed(oriented(arcs[first], v));  // x -> v
      SPTree sink_side = oriented(arcs[second], v);  // v -> y
      arcs[first].alive = arcs[second].alive = false;
      const auto key = std::min(arcs[first].key, arcs[second].key);
      arcs.push_back({x, y, SPTree::series(std::move(sink_side), std::move(source_side)), key});
      live.erase(v);
      changed = true;
      break;
    }
    if (!changed) break;
  }

  std::vector<const Arc*> remaining;
  for (const auto& arc : arcs) {
    if (arc.alive) remaining.push_back(&arc);
  }
  if (remaining.size() != 1 || live.size() != 2) return std::nullopt;
  const Arc& last = *remaining.front();
  if (std::minmax(last.a, last.b) != std::minmax(s, t)) return std::nullopt;
  return oriented(last, s);
}

inline std::map<VertexId, std::size_t> degrees(const Linkage& linkage) {
  std::map<VertexId, std::size_t> deg;
  for (const auto& v : linkage.vertices) deg[v] = 0;
  for (const auto& e : linkage.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

}  // namespace detail

/// A maximal path whose interior vertices have degree two in the graph.
struct Chain {
  std::vector<VertexId> vertices;  // from one endpoint to the other
  std::vector<Edge> edges;  // in path order

  PathSpec spec() const {
    PathSpec p;
    for (const auto& e : edges) p.lengths.push_back(e.length);
    return p;
  }
};

/// Maximal degree-two chains. A graph in which every vertex has degree two
/// (a cycle) has no chain endpoints and yields an empty list.
inline std::vector<Chain> maximal_chains(const Linkage& linkage) {
  const auto deg = detail::degrees(linkage);
  std::map<VertexId, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < linkage.edges.size(); ++i) {
    incident[linkage.edges[i].u].push_back(i);
    incident[linkage.edges[i].v].push_back(i);
  }
  std::vector<bool> used(linkage.edges.size(), false);
  std::vector<Chain> chains;
  for (const auto& start : linkage.vertices) {
    if (deg.at(start) == 2) continue;
    for (auto first_edge : incident[start]) {
      if (used[first_edge]) continue;
      Chain chain;
      chain.vertices.push_back(start);
      VertexId at = start;
      std::size_t e = first_edge;
      while (true) {
        used[e] = true;
        const Edge& edge = linkage.edges[e];
        chain.edges.push_back(edge);
        at = edge.u == at ? edge.v : edge.u;
        chain.vertices.push_back(at);
        if (deg.at(at) != 2) break;
        const auto& around = incident[at];
        const std::size_t next = around[0] == e ? around[1] : around[0];
        if (used[next]) break;
        e = next;
      }
      chains.push_back(std::move(chain));
    }
  }
  return chains;
}

/// Decomposition tree of the linkage as a two-terminal series-parallel graph.
///
/// With explicit terminals the tree is oriented from `terminals->first` to
/// `terminals->second`; InvalidTerminals is raised when the graph is
/// series-parallel but not with that pair. Without terminals, endpoints of
/// maximal degree-two chains are tried first (lexicographic order), then every
/// remaining vertex pair; the first pair that reduces wins.
inline SPTree build_sp_tree(const Linkage& linkage, const std::optional<TerminalPair>& terminals = std::nullopt) {
  require_valid(linkage);
  if (linkage.edges.empty()) throw NotSeriesParallel("not series-parallel: no edges");
  if (!is_connected(linkage)) throw DisconnectedGraph();

  if (terminals) {
    if (auto tree = detail::reduce_to_tree(linkage, terminals->first, terminals->second)) return *std::move(tree);
    build_sp_tree(linkage);  // raises NotSeriesParallel when no pair works
    throw InvalidTerminals("graph is series-parallel but (" + terminals->first + "," + terminals->second +
                           ") are not valid terminals");
  }

  std::vector<TerminalPair> candidates;
  std::set<TerminalPair> tried;
  for (const auto& chain : maximal_chains(linkage)) {
    const auto& a = chain.vertices.front();
    const auto& b = chain.vertices.back();
    if (a != b) candidates.push_back(std::minmax(a, b));
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& pair : candidates) {
    if (!tried.insert(pair).second) continue;
    if (auto tree = detail::reduce_to_tree(linkage, pair.first, pair.second)) return *std::move(tree);
  }
  std::vector<VertexId> sorted = linkage.vertices;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      TerminalPair pair{sorted[i], sorted[j]};
      if (!tried.insert(pair).second) continue;
      if (auto tree = detail::reduce_to_tree(linkage, pair.first, pair.second)) return *std::move(tree);
    }
  }
  throw NotSeriesParallel();
}

// ---------------------------------------------------------------------------
// Parallel-path splits of 2-connected blocks
// ---------------------------------------------------------------------------

/// A u-v path of a split together with where it runs.
struct SplitPath {
  PathSpec spec;
  std::vector<VertexId> vertices;  // u ... v
  std::vector<EdgeId> edges;
};

/// (G,u,v) = P1 || ... || Pn || K with every Pi a u-v path whose interior
/// vertices have degree two, n >= 2, and K the (possibly absent) remainder.
struct ParallelSplit {
  VertexId u;
  VertexId v;
  std::vector<SplitPath> paths;
  std::optional<SPTree> rest;
  std::optional<Linkage> rest_linkage;
};

/// A terminal pair that admits a split, with the number of chains it carries.
struct SplitCandidate {
  TerminalPair terminals;
  std::size_t paths = 0;
};

/// Picks one candidate; receives the candidates sorted by terminal pair.
using SplitChooser = std::function<std::size_t(const std::vector<SplitCandidate>&)>;

/// Default choice: the most paths, ties going to the lexicographically greatest pair.
inline std::size_t choose_most_paths(const std::vector<SplitCandidate>& candidates) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].paths >= candidates[best].paths) best = i;
  }
  return best;
}

/// Number of maximal chains of a block; a cycle counts as one.
inline std::size_t chain_count(const Linkage& block) {
  auto chains = maximal_chains(block);
  return chains.empty() && !block.edges.empty() ? 1 : chains.size();
}

namespace detail {

inline SplitPath oriented_path(const Chain& chain, const VertexId& from) {
  SplitPath path;
  std::vector<VertexId> vertices = chain.vertices;
  std::vector<Edge> edges = chain.edges;
  if (vertices.front() != from) {
    std::reverse(vertices.begin(), vertices.end());
    std::reverse(edges.begin(), edges.end());
  }
  path.vertices = std::move(vertices);
  for (const auto& e : edges) {
    path.spec.lengths.push_back(e.length);
    path.edges.push_back(e.id);
  }
  return path;
}

/// The two arcs of a cycle between u and v, each as a chain starting at u.
inline std::vector<Chain> cycle_arcs(const Linkage& cycle, const VertexId& u, const VertexId& v) {
  std::map<VertexId, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < cycle.edges.size(); ++i) {
    incident[cycle.edges[i].u].push_back(i);
    incident[cycle.edges[i].v].push_back(i);
  }
  std::vector<Chain> arcs;
  for (auto first_edge : incident[u]) {
    Chain chain;
    chain.vertices.push_back(u);
    VertexId at = u;
    std::size_t e = first_edge;
    while (true) {
      const Edge& edge = cycle.edges[e];
      chain.edges.push_back(edge);
      at = edge.u == at ? edge.v : edge.u;
      chain.vertices.push_back(at);
      if (at == v) break;
      const auto& around = incident[at];
      e = around[0] == e ? around[1] : around[0];
    }
    arcs.push_back(std::move(chain));
  }
  return arcs;
}

}  // namespace detail

/// All terminal pairs of a 2-connected block that carry at least two chains.
inline std::vector<SplitCandidate> split_candidates(const Linkage& block) {
  std::vector<SplitCandidate> out;
  auto chains = maximal_chains(block);
  if (chains.empty()) {
    std::vector<VertexId> sorted = block.vertices;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      for (std::size_t j = i + 1; j < sorted.size(); ++j) out.push_back({{sorted[i], sorted[j]}, 2});
    }
    return out;
  }
  std::map<TerminalPair, std::size_t> counts;
  for (const auto& c : chains) {
    if (c.vertices.front() != c.vertices.back()) ++counts[std::minmax(c.vertices.front(), c.vertices.back())];
  }
  for (const auto& [pair, n] : counts) {
    if (n >= 2) out.push_back({pair, n});
  }
  return out;
}

/// Splits a 2-connected series-parallel block into parallel u-v paths with
/// degree-two interiors plus a remainder. Multi-edges count as one-edge paths.
inline ParallelSplit find_parallel_split(const Linkage& block, const SplitChooser& choose = choose_most_paths) {
  if (block.edges.size() < 2) throw DomainError("parallel split needs a block with more than one edge");
  for (const auto& e : block.edges) {
    if (e.length <= 0) throw DomainError("parallel split needs positive lengths");
  }
  auto candidates = split_candidates(block);
  if (candidates.empty()) throw NotSeriesParallel("not series-parallel: no pair of parallel chains");
  const std::size_t pick = choose(candidates);
  if (pick >= candidates.size()) throw DomainError("split chooser returned an invalid index");
  const auto [u, v] = candidates[pick].terminals;

  ParallelSplit split;
  split.u = u;
  split.v = v;
  auto chains = maximal_chains(block);
  if (chains.empty()) {
    for (const auto& arc : detail::cycle_arcs(block, u, v)) split.paths.push_back(detail::oriented_path(arc, u));
  } else {
    std::set<EdgeId> on_paths;
    for (const auto& c : chains) {
      if (std::minmax(c.vertices.front(), c.vertices.back()) != std::minmax(u, v)) continue;
      split.paths.push_back(detail::oriented_path(c, u));
      for (const auto& e : c.edges) on_paths.insert(e.id);
    }
    std::vector<Edge> rest;
    for (const auto& e : block.edges) {
      if (!on_paths.contains(e.id)) rest.push_back(e);
    }
    if (!rest.empty()) {
      Linkage rest_linkage = edge_induced(block, rest);
      try {
        split.rest = build_sp_tree(rest_linkage, TerminalPair{u, v});
      } catch (const InvalidTerminals&) {
        throw NotSeriesParallel("not series-parallel: remainder of the split at (" + u + "," + v +
                                ") is not a two-terminal series-parallel graph");
      }
      split.rest_linkage = std::move(rest_linkage);
    }
  }
  auto first_edge_position = [&](const SplitPath& p) {
    for (std::size_t i = 0; i < block.edges.size(); ++i) {
      if (std::find(p.edges.begin(), p.edges.end(), block.edges[i].id) != p.edges.end()) return i;
    }
    return block.edges.size();
  };
  std::stable_sort(split.paths.begin(), split.paths.end(), [&](const SplitPath& a, const SplitPath& b) {
    return first_edge_position(a) < first_edge_position(b);
  });
  return split;
}

}  // namespace splink
