#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tslice/syntax.hpp"

namespace tslice::testing {

inline std::string fixture_path(const std::string& name) { return std::string(TSLICE_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("cannot open fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline World load_world(const std::string& name) {
  auto parsed = parse_world(read_fixture(name), name);
  if (!parsed.ok()) {
    std::string msg = "fixture " + name + " does not parse:";
    for (const auto& d : parsed.diagnostics) msg += "\n  " + to_string(d);
    throw std::runtime_error(msg);
  }
  return *parsed.world;
}

} // namespace tslice::testing
