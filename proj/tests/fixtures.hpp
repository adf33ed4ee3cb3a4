#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "splink/splink.hpp"

namespace splink::testing {

inline Linkage load_fixture(const std::string& name) {
  std::ifstream in(std::string(SPLINK_FIXTURES) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream text;
  text << in.rdbuf();
  return parse_linkage(text.str());
}

}  // namespace splink::testing
