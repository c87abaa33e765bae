#ifndef MATRIXCODE_TOOLS_CLI_HPP
#define MATRIXCODE_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "matrixcode/matrix.hpp"
#include "matrixcode/value.hpp"

namespace mxc::cli {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitStepLimit = 2;
inline constexpr int kExitError = 3;

/// Runs one `matrixcode` invocation; argv[0] is the program name.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Sources of the two merge programs compared by `bench-merge`.
const char* emerge_source();
const char* mmerge_source();

struct StreamPair {
  Stream left, right;
};

/// Lengths uniform in [0,50]; strictly increasing values whose successive
/// increments (starting from 0) are uniform in [1,9].
StreamPair random_stream_pair(std::mt19937_64& rng);

struct MergeCounts {
  std::int64_t getL = 0, getR = 0, putL = 0, putR = 0;
  std::vector<std::int64_t> output;
  bool halted = false;
};

/// Runs a merge matrix (streams `left`, `right`, `out`) deterministically.
MergeCounts run_merge(const CodeMatrix& m, const StreamPair& input);

}  // namespace mxc::cli

#endif  // MATRIXCODE_TOOLS_CLI_HPP
