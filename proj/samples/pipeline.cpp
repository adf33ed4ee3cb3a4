// Walks one fixture through every stage: range, verdict, realisation.
#include <fstream>
#include <iostream>
#include <sstream>

#include "splink/splink.hpp"

int main() {
  using namespace splink;
  std::ifstream in(std::string(SPLINK_FIXTURES) + "/example_chain.json");
  std::stringstream text;
  text << in.rdbuf();
  const Linkage linkage = parse_linkage(text.str());

  const SPTree tree = build_sp_tree(linkage, linkage.terminals);
  std::vector<std::string> steps;
  const Interval range = linkage_range(tree, &steps);
  for (const auto& s : steps) std::cout << s << "\n";
  std::cout << "range " << to_string(range) << "\n";

  const Verdict verdict = decide_connected(linkage);
  std::cout << "verdict " << to_string(verdict.status) << "\n";
  for (const auto& entry : verdict.trace) std::cout << "  " << describe(entry) << "\n";

  const Realisation r = realize(linkage, Rational(4));
  const double error = verify(linkage, r);
  std::cout << "realisation at x=4, max edge error " << error << "\n";
  return error < 1e-9 && verdict.status == Status::Disconnected ? 0 : 1;
}
