#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splink/core/interval.hpp"
#include "splink/core/linkage.hpp"
#include "splink/core/sp_tree.hpp"
#include "splink/core/verdict.hpp"
#include "splink/intervals.hpp"
#include "splink/sp_decompose.hpp"

namespace splink {

/// Range of terminal distances [L,s,t] of a two-terminal series-parallel
/// linkage: leaves are rigid, series nodes compose, parallel nodes intersect.
/// When `steps` is given, every composition is appended as "A ∘ B = C" or
/// "A ∩ B = C", with A the sink-side part of a series node.
inline Interval linkage_range(const SPTree& tree, std::vector<std::string>* steps = nullptr) {
  switch (tree.kind) {
    case SPTree::Kind::Leaf:
      return Interval::point(tree.length);
    case SPTree::Kind::Series: {
      const Interval left = linkage_range(tree.left(), steps);
      const Interval right = linkage_range(tree.right(), steps);
      Interval out = series_compose(left, right);
      if (steps) steps->push_back(to_string(left) + " ∘ " + to_string(right) + " = " + to_string(out));
      return out;
    }
    case SPTree::Kind::Parallel: {
      Interval acc = linkage_range(tree.children.front(), steps);
      for (std::size_t i = 1; i < tree.children.size(); ++i) {
        const Interval next = linkage_range(tree.children[i], steps);
        const Interval out = intersect(acc, next);
        if (steps) steps->push_back(to_string(acc) + " ∩ " + to_string(next) + " = " + to_string(out));
        acc = out;
      }
      return acc;
    }
  }
  return {};
}

/// Tree of a biconnected block, rooted at `preferred` when both vertices lie
/// in the block and form a valid terminal pair there.
inline SPTree block_tree(const Linkage& block, const std::optional<TerminalPair>& preferred) {
  if (preferred) {
    const auto& vs = block.vertices;
    const bool inside = std::find(vs.begin(), vs.end(), preferred->first) != vs.end() &&
                        std::find(vs.begin(), vs.end(), preferred->second) != vs.end();
    if (inside) {
      if (auto tree = detail::reduce_to_tree(block, preferred->first, preferred->second)) return *std::move(tree);
    }
  }
  return build_sp_tree(block);
}

struct RealisabilityReport {
  bool realisable = true;
  std::vector<BlockReport> blocks;
  std::vector<std::string> notes;
};

/// Decides whether the linkage has any planar realisation. Zero-length edges
/// are contracted first; the linkage is realisable exactly when every
/// biconnected block has a nonempty terminal-distance range.
inline RealisabilityReport realisable(const Linkage& linkage) {
  require_valid(linkage);
  RealisabilityReport report;
  Contraction contraction;
  try {
    contraction = contract_zero_edges(linkage);
  } catch (const Unrealisable& e) {
    report.realisable = false;
    report.notes.push_back(e.what());
    return report;
  }
  if (contraction.contracted_edges > 0)
    report.notes.push_back("contracted " + std::to_string(contraction.contracted_edges) + " zero-length edge(s)");
  const Linkage& reduced = contraction.linkage;
  const auto blocks = biconnected_blocks(reduced);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const SPTree tree = block_tree(blocks[i], reduced.terminals);
    BlockReport block{i, {}, {tree.source, tree.sink}, linkage_range(tree)};
    for (const auto& e : blocks[i].edges) block.edges.push_back(e.id);
    if (block.range.is_empty()) report.realisable = false;
    report.blocks.push_back(std::move(block));
  }
  return report;
}

/// Outcome of checking every polygonal sub-linkage.
struct CycleCheck {
  bool all_realisable = true;
  std::vector<EdgeId> failing_cycle;  // first cycle found unrealisable
  std::size_t cycles = 0;
};

/// Enumerates the simple cycles of the multigraph (two parallel edges form a
/// cycle of length two) and tests each for realisability as a polygon.
/// Throws BudgetExceeded once more than `budget` cycles have been seen.
inline CycleCheck polygonal_sublinkage_check(const Linkage& linkage, std::size_t budget = 10000) {
  require_valid(linkage);
  std::map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < linkage.vertices.size(); ++i) index[linkage.vertices[i]] = i;
  const std::size_t n = linkage.vertices.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(n);
  for (std::size_t e = 0; e < linkage.edges.size(); ++e) {
    const auto u = index.at(linkage.edges[e].u);
    const auto v = index.at(linkage.edges[e].v);
    adjacency[u].push_back({v, e});
    adjacency[v].push_back({u, e});
  }

  CycleCheck check;
  std::vector<bool> on_path(n, false);
  std::vector<std::size_t> path_edges;

  auto test_cycle = [&]() {
    if (++check.cycles > budget)
      throw BudgetExceeded("instance too large: more than " + std::to_string(budget) + " cycles");
    if (!check.all_realisable) return;
    Rational total = 0;
    Rational longest = 0;
    for (auto e : path_edges) {
      total += linkage.edges[e].length;
      longest = std::max(longest, linkage.edges[e].length);
    }
    if (2 * longest > total) {
      check.all_realisable = false;
      for (auto e : path_edges) check.failing_cycle.push_back(linkage.edges[e].id);
    }
  };

  // Cycles are enumerated from their smallest vertex; each is found once in
  // each direction and kept when the first edge precedes the last.
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t start, std::size_t at) {
    for (const auto& [w, e] : adjacency[at]) {
      if (!path_edges.empty() && e == path_edges.back()) continue;
      if (w == start) {
        if (path_edges.empty() || path_edges.front() >= e) continue;
        path_edges.push_back(e);
        test_cycle();
        path_edges.pop_back();
        continue;
      }
      if (w < start || on_path[w]) continue;
      on_path[w] = true;
      path_edges.push_back(e);
      extend(start, w);
      path_edges.pop_back();
      on_path[w] = false;
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    on_path[s] = true;
    extend(s, s);
    on_path[s] = false;
  }
  return check;
}

}  // namespace splink
