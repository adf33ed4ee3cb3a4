#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "splink/core/interval.hpp"
#include "splink/core/linkage.hpp"

namespace splink {

enum class Status { Empty, Connected, Disconnected };

inline std::string to_string(Status status) {
  switch (status) {
    case Status::Empty: return "empty";
    case Status::Connected: return "connected";
    case Status::Disconnected: return "disconnected";
  }
  return "unknown";
}

/// One u-v path of a parallel split as it was tested.
struct PathReport {
  std::vector<VertexId> vertices;
  std::vector<Rational> lengths;
  Interval range;
  std::optional<IntervalSet> nabla;  // absent for one-edge paths
  std::optional<bool> meets_common_range;  // absent when the test was skipped
};

/// One round of the parallel-split reduction on a block.
struct SplitStep {
  enum class Outcome { Connected, Disconnected, Reduced };

  std::size_t block = 0;
  std::size_t round = 0;
  TerminalPair terminals;
  std::vector<PathReport> paths;
  std::optional<Interval> rest_range;  // range of the remainder K, if present
  Interval common_range;  // [L,u,v]
  Outcome outcome = Outcome::Connected;
  std::vector<Rational> q_lengths;  // replacement path, when reduced
};

inline std::string to_string(SplitStep::Outcome outcome) {
  switch (outcome) {
    case SplitStep::Outcome::Connected: return "connected";
    case SplitStep::Outcome::Disconnected: return "disconnected";
    case SplitStep::Outcome::Reduced: return "reduced";
  }
  return "unknown";
}

struct BlockReport {
  std::size_t block = 0;
  std::vector<EdgeId> edges;
  TerminalPair terminals;
  Interval range;
};

struct Note {
  std::string text;
};

using TraceEntry = std::variant<Note, BlockReport, SplitStep>;

struct Verdict {
  Status status = Status::Connected;
  std::vector<TraceEntry> trace;

  void note(std::string text) { trace.emplace_back(Note{std::move(text)}); }
};

inline std::string join_rationals(const std::vector<Rational>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += to_string(values[i]);
  }
  return out + ")";
}

/// Human-readable rendering of a trace entry.
inline std::string describe(const TraceEntry& entry) {
  struct Visitor {
    std::string operator()(const Note& n) const { return n.text; }
    std::string operator()(const BlockReport& b) const {
      return "block " + std::to_string(b.block) + " (" + std::to_string(b.edges.size()) + " edges): [L," +
             b.terminals.first + "," + b.terminals.second + "] = " + to_string(b.range);
    }
    std::string operator()(const SplitStep& s) const {
      std::string out = "block " + std::to_string(s.block) + " round " + std::to_string(s.round) + ": split at (" +
                        s.terminals.first + "," + s.terminals.second + "), R = " + to_string(s.common_range);
      for (const auto& p : s.paths) {
        out += "; path " + join_rationals(p.lengths) + " range " + to_string(p.range);
        if (p.nabla) out += " nabla " + to_string(*p.nabla);
        if (p.meets_common_range) out += *p.meets_common_range ? " meets R" : " misses R";
      }
      if (s.rest_range) out += "; rest range " + to_string(*s.rest_range);
      out += " -> " + to_string(s.outcome);
      if (!s.q_lengths.empty()) out += " with Q = " + join_rationals(s.q_lengths);
      return out;
    }
  };
  return std::visit(Visitor{}, entry);
}

}  // namespace splink
