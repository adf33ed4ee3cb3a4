#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "splink/analysis.hpp"
#include "splink/core/errors.hpp"
#include "splink/core/verdict.hpp"
#include "splink/intervals.hpp"
#include "splink/sp_decompose.hpp"

namespace splink {

/// Four-edge path ((a+b)/2, (b-a)/6, (b-a)/6, (b-a)/6) whose distance range
/// and connected-fibre set are both exactly [a, b]. When a == b the path
/// degenerates to a single rigid edge of length a.
inline PathSpec build_q(const Rational& a, const Rational& b) {
  if (a < 0) throw DomainError("build_q requires a >= 0");
  if (b < a) throw DomainError("b < a: parallel paths have no common distance");
  if (a == b) return {{a}};
  const Rational side = (b - a) / 6;
  return {{(a + b) / 2, side, side, side}};
}

/// Result of one reduction round on a block.
struct ReduceOutcome {
  struct Decided {
    Status status;
  };
  struct Reduced {
    Linkage reduced;  // Q || K
    PathSpec q;
  };

  std::variant<Decided, Reduced> result;
  SplitStep step;

  bool decided() const { return std::holds_alternative<Decided>(result); }
};

namespace detail {

inline std::string fresh_id(const std::string& base, const std::set<std::string>& taken) {
  std::string id = base;
  while (taken.contains(id)) id += "'";
  return id;
}

}  // namespace detail

/// One round of the connectedness recursion on a 2-connected block with
/// positive lengths and nonempty range.
///
/// The block is split as P1 || ... || Pn || K at (u,v) and R = [L,u,v] is
/// computed. If some path with two or more edges has no connected fibre over
/// R the block is disconnected (reflecting that path across the u-v line
/// cannot be undone). Otherwise, without K the block is connected; with K the
/// paths are replaced by a single Q path with the same range and the block
/// L1 = Q || K is returned for the next round.
inline ReduceOutcome reduce_step(const Linkage& block, const SplitChooser& choose = choose_most_paths,
                                 std::size_t block_index = 0, std::size_t round = 0) {
  const ParallelSplit split = find_parallel_split(block, choose);

  SplitStep step;
  step.block = block_index;
  step.round = round;
  step.terminals = {split.u, split.v};

  Interval common = split.rest ? linkage_range(*split.rest) : Interval::empty();
  if (split.rest) step.rest_range = common;
  for (std::size_t i = 0; i < split.paths.size(); ++i) {
    PathReport report;
    report.vertices = split.paths[i].vertices;
    report.lengths = split.paths[i].spec.lengths;
    report.range = path_range(split.paths[i].spec);
    common = (i == 0 && !split.rest) ? report.range : intersect(common, report.range);
    step.paths.push_back(std::move(report));
  }
  step.common_range = common;
  if (common.is_empty()) throw Unrealisable("block is not realisable at (" + split.u + "," + split.v + ")");

  bool all_meet = true;
  for (std::size_t i = 0; i < split.paths.size(); ++i) {
    // One-edge paths are rigid: their single fibre is a point.
    if (split.paths[i].spec.k() < 2) continue;
    auto& report = step.paths[i];
    report.nabla = nabla(split.paths[i].spec);
    report.meets_common_range = report.nabla->intersects(common);
    all_meet = all_meet && *report.meets_common_range;
  }

  if (!all_meet) {
    step.outcome = SplitStep::Outcome::Disconnected;
    return {ReduceOutcome::Decided{Status::Disconnected}, std::move(step)};
  }
  if (!split.rest) {
    step.outcome = SplitStep::Outcome::Connected;
    return {ReduceOutcome::Decided{Status::Connected}, std::move(step)};
  }

  Rational a = step.paths.front().range.lo();
  Rational b = step.paths.front().range.hi();
  for (const auto& p : step.paths) {
    a = std::max(a, p.range.lo());
    b = std::min(b, p.range.hi());
  }
  PathSpec q = build_q(a, b);

  std::set<std::string> taken(block.vertices.begin(), block.vertices.end());
  for (const auto& e : block.edges) taken.insert(e.id);
  Linkage reduced = *split.rest_linkage;
  std::vector<VertexId> stops{split.u};
  for (std::size_t i = 1; i < q.k(); ++i) {
    stops.push_back(detail::fresh_id("q" + std::to_string(round) + "." + std::to_string(i), taken));
    taken.insert(stops.back());
    reduced.vertices.push_back(stops.back());
  }
  stops.push_back(split.v);
  for (std::size_t i = 0; i < q.k(); ++i) {
    const EdgeId id = detail::fresh_id("q" + std::to_string(round) + ".e" + std::to_string(i + 1), taken);
    taken.insert(id);
    reduced.edges.push_back({id, stops[i], stops[i + 1], q.lengths[i]});
  }

  // [Q] equals the intersection of the path ranges, so the block range is unchanged.
  if (linkage_range(build_sp_tree(reduced, TerminalPair{split.u, split.v})) != common)
    throw std::logic_error("reduction changed the terminal-distance range");
  if (chain_count(reduced) >= chain_count(block)) throw std::logic_error("reduction did not shrink the block");

  step.outcome = SplitStep::Outcome::Reduced;
  step.q_lengths = q.lengths;
  return {ReduceOutcome::Reduced{std::move(reduced), std::move(q)}, std::move(step)};
}

struct ConnectednessOptions {
  SplitChooser choose = choose_most_paths;
};

/// Decides whether the moduli space of the linkage is empty, connected or
/// disconnected. The linkage must be connected and every biconnected block
/// must be series-parallel once zero-length edges are contracted.
inline Verdict decide_connected(const Linkage& linkage, const ConnectednessOptions& options = {}) {
  require_valid(linkage);
  Verdict verdict;

  Contraction contraction;
  try {
    contraction = contract_zero_edges(linkage);
  } catch (const Unrealisable& e) {
    verdict.status = Status::Empty;
    verdict.note(e.what());
    return verdict;
  }
  if (contraction.contracted_edges > 0)
    verdict.note("contracted " + std::to_string(contraction.contracted_edges) + " zero-length edge(s)");

  const auto blocks = biconnected_blocks(contraction.linkage);
  if (blocks.empty()) {
    verdict.note("no edges: the moduli space is a point");
    return verdict;
  }

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const SPTree tree = block_tree(blocks[i], contraction.linkage.terminals);
    BlockReport report{i, {}, {tree.source, tree.sink}, linkage_range(tree)};
    for (const auto& e : blocks[i].edges) report.edges.push_back(e.id);
    if (report.range.is_empty()) verdict.status = Status::Empty;
    verdict.trace.emplace_back(std::move(report));
  }
  if (verdict.status == Status::Empty) {
    verdict.note("some block has an empty terminal-distance range: no realisation");
    return verdict;
  }

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].edges.size() == 1) {
      verdict.note("block " + std::to_string(i) + ": single rigid edge");
      continue;
    }
    Linkage current = blocks[i];
    for (std::size_t round = 0;; ++round) {
      ReduceOutcome outcome = reduce_step(current, options.choose, i, round);
      for (const auto& p : outcome.step.paths) {
        if (p.lengths.size() == 1)
          verdict.note("block " + std::to_string(i) + " round " + std::to_string(round) +
                       ": one-edge path of length " + to_string(p.lengths.front()) + " is rigid, no fibre test");
      }
      verdict.trace.emplace_back(outcome.step);
      if (auto* decided = std::get_if<ReduceOutcome::Decided>(&outcome.result)) {
        if (decided->status == Status::Disconnected) verdict.status = Status::Disconnected;
        break;
      }
      current = std::move(std::get<ReduceOutcome::Reduced>(outcome.result).reduced);
    }
  }
  return verdict;
}

}  // namespace splink
