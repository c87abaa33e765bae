#ifndef MATRIXCODE_CODEGEN_HPP
#define MATRIXCODE_CODEGEN_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrixcode/matrix.hpp"

namespace mxc {

struct Finding {
  std::string column;
  std::string message;
  /// Data state on which two rules both apply, when one was found.
  std::optional<std::string> witness;
};

struct TranslatabilityReport {
  std::vector<Finding> findings;
  bool translatable() const { return findings.empty(); }
};

/// A column translates when every rule is a run of tests (guards, getX,
/// ngetX, rd) followed by a run of actions (statements, putX, wr, dir)
/// and its rules are pairwise exclusive. Exclusion is shown syntactically
/// (b / !b, complementary comparisons, getX / ngetX, rd of different
/// symbols) or, failing that, by enumerating the tested variables over a
/// small domain (integers -4..4, streams of length up to 2).
TranslatabilityReport check_translatable(const CodeMatrix& m);

std::string format_findings(const TranslatabilityReport& r);

enum class Profile { C99 };

class CodegenError : public std::runtime_error {
 public:
  explicit CodegenError(const TranslatabilityReport& r);
  const TranslatabilityReport& report() const noexcept { return report_; }

 private:
  TranslatabilityReport report_;
};

/// One C function: an enum of control states, `state` starting at S, an
/// endless loop around a switch with one case per control state in
/// alphabetical order, and `return` at H. Streams and the tape go through
/// the handles of `matrixcode_rt.h`. Throws CodegenError when
/// check_translatable reports findings.
std::string emit(const CodeMatrix& m, const std::string& function_name, Profile profile = Profile::C99);

/// Name of the support header the emitted code includes.
inline constexpr const char* kRuntimeHeader = "matrixcode_rt.h";

}  // namespace mxc

#endif  // MATRIXCODE_CODEGEN_HPP
