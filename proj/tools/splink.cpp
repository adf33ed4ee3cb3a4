// Command-line front end: check, range, nabla, tree, realize, oracle.
//
// Exit codes: 0 ok, 1 malformed input, 2 not series-parallel, 3 infeasible request.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "splink/splink.hpp"

namespace {

using namespace splink;

enum Exit { kOk = 0, kMalformed = 1, kNotSeriesParallel = 2, kInfeasible = 3 };

struct Globals {
  std::string input = "-";
  std::string terminals;
  bool json = false;
};

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) out.push_back(std::move(token));
      token.clear();
    } else {
      token += c;
    }
  }
  if (!token.empty()) out.push_back(std::move(token));
  return out;
}

std::optional<TerminalPair> parse_terminals(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto parts = split_list(text);
  if (parts.size() != 2) throw ParseError("--terminals expects u,v");
  return TerminalPair{parts[0], parts[1]};
}

Linkage load(const Globals& g) {
  Linkage linkage = parse_linkage(read_all(g.input));
  if (auto t = parse_terminals(g.terminals)) linkage.terminals = t;
  require_valid(linkage);
  return linkage;
}

std::vector<Rational> parse_lengths(const std::vector<std::string>& args) {
  std::vector<Rational> out;
  for (const auto& arg : args) {
    for (const auto& token : split_list(arg)) out.push_back(parse_rational(token));
  }
  return out;
}

/// Contracts zero-length edges and builds the tree for the (mapped) terminals.
SPTree tree_for(const Linkage& linkage) {
  const Contraction c = contract_zero_edges(linkage);
  std::optional<TerminalPair> mapped;
  if (linkage.terminals) {
    mapped = TerminalPair{c.representative.at(linkage.terminals->first), c.representative.at(linkage.terminals->second)};
    if (mapped->first == mapped->second) throw DomainError("terminals are merged by zero-length edges");
  }
  return build_sp_tree(c.linkage, mapped);
}

int cmd_check(const Globals& g) {
  const Verdict verdict = decide_connected(load(g));
  if (g.json) {
    std::cout << to_json(verdict).dump() << "\n";
  } else {
    std::cout << to_string(verdict.status) << "\n";
    for (const auto& entry : verdict.trace) std::cout << "  " << describe(entry) << "\n";
  }
  return kOk;
}

int cmd_range(const Globals& g, bool trace) {
  const SPTree tree = tree_for(load(g));
  std::vector<std::string> steps;
  const Interval range = linkage_range(tree, &steps);
  if (g.json) {
    Json out{{"range", to_json(range)}, {"text", to_string(range)}, {"terminals", {tree.source, tree.sink}}};
    out["trace"] = steps;
    std::cout << out.dump() << "\n";
    return kOk;
  }
  if (trace) {
    for (const auto& s : steps) std::cout << s << "\n";
  }
  std::cout << to_string(range) << "\n";
  return kOk;
}

int cmd_nabla(const Globals& g, const std::vector<std::string>& args) {
  const PathSpec path{parse_lengths(args)};
  const IntervalSet set = nabla(path);
  if (g.json) {
    std::cout << Json{{"nabla", to_json(set)}, {"range", to_json(path_range(path))}, {"text", to_string(set)}}.dump()
              << "\n";
  } else {
    std::cout << to_string(set) << "\n";
  }
  return kOk;
}

int cmd_tree(const Globals& g) {
  const SPTree tree = tree_for(load(g));
  std::cout << to_dot(tree);
  return kOk;
}

int cmd_realize(const Globals& g, const std::string& distance) {
  const Linkage linkage = load(g);
  const Rational x = parse_rational(distance);
  const Realisation r = realize(linkage, x, linkage.terminals);
  std::cout << to_json(r).dump() << "\n";
  return kOk;
}

struct OracleArgs {
  std::string mode = "moduli";
  std::uint64_t seed = 1;
  int resolution = 200;
  std::size_t samples = 20000;
  std::string lengths;
  std::string distance;
  std::optional<double> epsilon;
};

int cmd_oracle(const Globals& g, const OracleArgs& a) {
  if (a.mode == "fiber") {
    if (a.lengths.empty() || a.distance.empty()) throw ParseError("fiber mode needs --lengths and --distance");
    FiberProbe probe{PathSpec{parse_lengths({a.lengths})}, to_double(parse_rational(a.distance)), a.resolution};
    const FiberResult result = fiber_components(probe);
    std::cout << to_json(probe, result).dump() << "\n";
    return kOk;
  }
  SampleOptions options;
  options.samples = a.samples;
  options.seed = a.seed;
  options.epsilon = a.epsilon;
  const ModuliSample sample = sample_moduli(load(g), options);
  std::cout << to_json(sample).dump() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis of planar series-parallel linkages"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--input,-i", g.input, "linkage JSON file, - for stdin")->capture_default_str();
  app.add_option("--terminals,-t", g.terminals, "terminal pair u,v");
  app.add_flag("--json", g.json, "machine-readable output");

  auto* check = app.add_subcommand("check", "decide whether the moduli space is empty, connected or disconnected");
  bool trace = false;
  auto* range = app.add_subcommand("range", "terminal-distance range [L,s,t]");
  range->add_flag("--trace", trace, "print every interval composition");
  std::vector<std::string> lengths;
  auto* nab = app.add_subcommand("nabla", "distances with a connected fibre for a path");
  nab->add_option("lengths", lengths, "edge lengths")->required();
  auto* tree = app.add_subcommand("tree", "decomposition tree in DOT");
  std::string distance;
  auto* real = app.add_subcommand("realize", "one realisation with the terminals at the given distance");
  real->add_option("--distance,-x", distance, "terminal distance")->required();
  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "brute-force fibre or moduli-space component estimates");
  oracle->add_option("--mode", oa.mode)->check(CLI::IsMember({"fiber", "moduli"}))->capture_default_str();
  oracle->add_option("--seed", oa.seed)->capture_default_str();
  oracle->add_option("--resolution", oa.resolution)->capture_default_str();
  oracle->add_option("--samples,-n", oa.samples)->capture_default_str();
  oracle->add_option("--lengths", oa.lengths, "path lengths (fiber mode)");
  oracle->add_option("--distance,-x", oa.distance, "terminal distance (fiber mode)");
  oracle->add_option("--epsilon", oa.epsilon, "clustering radius (moduli mode)");

  // Global flags are accepted after the subcommand too.
  for (auto* sub : {check, range, nab, tree, real, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (*check) return cmd_check(g);
    if (*range) return cmd_range(g, trace);
    if (*nab) return cmd_nabla(g, lengths);
    if (*tree) return cmd_tree(g);
    if (*real) return cmd_realize(g, distance);
    if (*oracle) return cmd_oracle(g, oa);
  } catch (const NotSeriesParallel& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotSeriesParallel;
  } catch (const InvalidTerminals& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotSeriesParallel;
  } catch (const OutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const Unrealisable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    // ParseError, InvalidLinkage, DisconnectedGraph and anything unexpected.
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
  return kMalformed;
}
