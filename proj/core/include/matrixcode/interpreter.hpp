#ifndef MATRIXCODE_INTERPRETER_HPP
#define MATRIXCODE_INTERPRETER_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrixcode/matrix.hpp"

namespace mxc {

struct Configuration {
  std::size_t control = 0;  // index into CodeMatrix::states
  DataState data;

  auto operator<=>(const Configuration&) const = default;
  bool operator==(const Configuration&) const = default;
};

struct Trace {
  std::vector<Configuration> configs;
  std::map<std::string, std::int64_t> counters;
  std::map<std::string, std::int64_t> revisits;
};

struct Outcome {
  enum class Status { Success, Failure, StepLimit };

  Status status = Status::Failure;
  Trace trace;

  const Configuration& last() const { return trace.configs.back(); }
};

const char* status_name(Outcome::Status s);

enum class Policy { Deterministic, All };

inline constexpr std::uint64_t kDefaultStepBound = 1'000'000;

/// An evaluation error raised during a run, with the computation so far.
class RunError : public std::runtime_error {
 public:
  RunError(const EvalError& cause, std::string control, Trace partial);

  const std::string& control() const noexcept { return control_; }
  const Trace& partial() const noexcept { return partial_; }

 private:
  std::string control_;
  Trace partial_;
};

/// One agent cycle from `c`. Deterministic policy scans the cells out of
/// c.control in declaration order and each cell's rules in order, and
/// returns the successor from the first rule with a nonempty image. The
/// All policy returns every successor. Throws EvalError from any scanned
/// rule.
std::vector<Configuration> step(const CodeMatrix& m, const Configuration& c, Policy policy,
                                CallCounter* counter = nullptr);

/// Iterates `step` from (S, d0). Under Policy::All a step with several
/// successors is reported as a RunError; use `enumerate` for those.
/// Counters record every builtin evaluation, revisits every entry.
Outcome run(const CodeMatrix& m, const DataState& d0, Policy policy = Policy::Deterministic,
            std::uint64_t step_bound = kDefaultStepBound);

/// Breadth-first exploration of the configuration graph from (S, d0).
/// Each configuration is expanded once; every complete configuration
/// found yields one outcome whose trace is a shortest path to it, and
/// configurations at `depth_bound` that still have successors yield
/// StepLimit outcomes. Results follow discovery order.
std::vector<Outcome> enumerate(const CodeMatrix& m, const DataState& d0, std::size_t depth_bound);

std::map<std::string, std::int64_t> count_calls(const Trace& t);

/// Plain-text table: header with read-only scalars (`N = 3`), then one
/// row per configuration with the control state and each other variable.
std::string format_trace(const CodeMatrix& m, const Trace& t);

/// Scalars never written by any cell or builtin; shown in the header.
std::vector<std::size_t> constant_slots(const CodeMatrix& m);

}  // namespace mxc

#endif  // MATRIXCODE_INTERPRETER_HPP
