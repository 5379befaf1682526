#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "stralg/bound_quiver.hpp"

#ifndef STRALG_FIXTURE_DIR
#error "STRALG_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace testing_support {

inline std::string fixture_path(const std::string& name) {
  return std::string(STRALG_FIXTURE_DIR) + "/" + name + ".sq";
}

inline stralg::BoundQuiver load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream s;
  s << in.rdbuf();
  return stralg::parse_bound_quiver(s.str());
}

inline const char* const fixture_names[] = {"triangle", "fivevertex", "parallel", "line4",
                                            "umpp7"};

}  // namespace testing_support
