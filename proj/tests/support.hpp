#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "ppaa/grounder.hpp"
#include "ppaa/parser.hpp"

namespace testing_support {

inline ppaa::GroundProgram ground_text(std::string_view text) {
  return ppaa::ground(ppaa::parse_program(text));
}

inline ppaa::Atom atom(std::string_view text) { return ppaa::parse_query(text); }

inline std::string fixture(const std::string& name) { return std::string(PPAA_FIXTURE_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The two running examples used throughout the suites.
inline constexpr std::string_view kGated = "0.3::b.\na :- b, \\+ c.\nd :- \\+ d.\n";
inline constexpr std::string_view kOddLoop = "a :- b, not c.\nb.\nd :- not d.\n";

}  // namespace testing_support
