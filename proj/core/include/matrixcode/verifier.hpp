#ifndef MATRIXCODE_VERIFIER_HPP
#define MATRIXCODE_VERIFIER_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matrixcode/interpreter.hpp"
#include "matrixcode/matrix.hpp"

namespace mxc {

/// A condition attached to a control state: the set of data states on
/// which `expr` evaluates to true.
struct Condition {
  std::string state;
  std::string label;
  Expr expr;
  SourceLoc loc;
};

bool operator==(const Condition& a, const Condition& b);

/// One condition per control state.
struct ConditionVector {
  std::map<std::string, Condition> entries;

  const Condition* find(const std::string& state) const;
  /// The all-true vector over `states`.
  static ConditionVector trivial(const std::vector<std::string>& states);
};

bool operator==(const ConditionVector& a, const ConditionVector& b);

/// Names of states in `m` that have no condition.
std::vector<std::string> missing_conditions(const ConditionVector& v, const CodeMatrix& m);

/// Finite range for one variable. Unlisted variables keep their initial
/// value (unset scalars, unset array elements, empty streams, blank tape).
struct VarDomain {
  enum class Kind {
    Range,     // scalar in [lo, hi]
    Elements,  // every element of an array in [lo, hi]
    Stream,    // length in [len_lo, len_hi], elements in [lo, hi]
    Fixed,     // exactly `fixed`
  };

  std::string name;
  Kind kind = Kind::Range;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool allow_unset = false;
  std::int64_t len_lo = 0;
  std::int64_t len_hi = 0;
  bool sorted = false;
  std::optional<Value> fixed;
  SourceLoc loc;
};

bool operator==(const VarDomain& a, const VarDomain& b);

/// A finite set of data states, enumerated as the product of per-variable
/// choices. Also used for sample inputs of runs.
struct DomainSpec {
  std::vector<VarDomain> vars;

  const VarDomain* find(const std::string& name) const;
  /// Replaces or adds an entry.
  void set(VarDomain d);
};

bool operator==(const DomainSpec& a, const DomainSpec& b);

/// Calls `visit` for every state of `dom` over `schema` until it returns
/// false. Returns the number of states visited.
std::uint64_t for_each_state(const Schema& schema, const DomainSpec& dom,
                             const std::function<bool(const DataState&)>& visit);

std::vector<DataState> enumerate_states(const Schema& schema, const DomainSpec& dom);

struct TripleResult {
  enum class Verdict { Holds, Counterexample, Error };

  Verdict verdict = Verdict::Holds;
  std::optional<DataState> before;
  std::optional<DataState> after;
  std::string message;
  std::uint64_t checked = 0;

  bool holds() const { return verdict == Verdict::Holds; }
};

/// {p} r {q}: for each d in `dom` with p(d), every d' in image(r, d)
/// satisfies q. The first failure is returned. Evaluation errors in p, r
/// or q are reported as Verdict::Error, distinct from violations.
TripleResult check_triple(const Expr& p, const RelationExpr& r, const Expr& q, const Schema& schema,
                          const DomainSpec& dom);

struct CellReport {
  std::string from;
  std::string to;
  std::string relation;
  TripleResult result;
};

struct VectorReport {
  std::vector<CellReport> cells;
  bool holds() const;
};

/// {v[j]} M[j,i] {v[i]} for every nonempty cell, i.e. {v}M included in v.
VectorReport check_vector(const ConditionVector& v, const CodeMatrix& m, const DomainSpec& dom);

struct Violation {
  std::size_t index = 0;
  std::string control;
  DataState data;
  std::string message;
};

/// Checks v[control] on every configuration of `t`.
std::vector<Violation> monitor(const CodeMatrix& m, const ConditionVector& v, const Trace& t);

struct Witness {
  std::string state;
  DataState data;
  std::string note;
};

/// Per-column witnesses: states satisfying the column's condition where no
/// transition applies. Empty means no failed computation was found.
struct CompletenessReport {
  std::map<std::string, std::vector<Witness>> columns;
  std::uint64_t explored = 0;

  bool complete() const;
};

/// Domain mode: every d in `dom` with v[k](d), for every non-halt k.
CompletenessReport completeness(const CodeMatrix& m, const ConditionVector& v, const DomainSpec& dom);

/// Sample mode: explores all computations from each sample start state and
/// reports the stuck configurations whose data satisfies their condition.
CompletenessReport completeness_from_samples(const CodeMatrix& m, const ConditionVector& v,
                                             const std::vector<DataState>& starts,
                                             std::size_t depth_bound = 100000);

/// `{A} rule {B}  holds` lines plus counterexamples, one block per cell.
std::string format_vector_report(const CodeMatrix& m, const ConditionVector& v,
                                 const VectorReport& r);
std::string format_completeness(const CodeMatrix& m, const CompletenessReport& r);

}  // namespace mxc

#endif  // MATRIXCODE_VERIFIER_HPP
