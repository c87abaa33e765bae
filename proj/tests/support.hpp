#ifndef MATRIXCODE_TESTS_SUPPORT_HPP
#define MATRIXCODE_TESTS_SUPPORT_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "matrixcode/dsl.hpp"

namespace mxc::testing {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) { return std::string(MATRIXCODE_CORPUS_DIR) + "/" + name; }
inline std::string fixture_path(const std::string& name) { return std::string(MATRIXCODE_FIXTURE_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(MATRIXCODE_GOLDEN_DIR) + "/" + name; }

inline Program load_program(const std::string& path) {
  ParseResult r = parse_program(slurp(path));
  if (!r.ok()) {
    std::string msg = path + " does not parse:";
    for (const auto& d : r.diagnostics) msg += "\n  " + d.format();
    throw std::runtime_error(msg);
  }
  return std::move(*r.program);
}

inline Program corpus(const std::string& name) { return load_program(corpus_path(name + ".mxc")); }

}  // namespace mxc::testing

#endif  // MATRIXCODE_TESTS_SUPPORT_HPP
