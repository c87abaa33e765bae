#ifndef MATRIXCODE_DIAGNOSTICS_HPP
#define MATRIXCODE_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "matrixcode/value.hpp"

namespace mxc {

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  SourceLoc loc;
  std::string message;

  /// `file:line:col: error: message`; the file part is omitted when empty.
  std::string format(const std::string& file = {}) const;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& ds);

}  // namespace mxc

#endif  // MATRIXCODE_DIAGNOSTICS_HPP
