#ifndef MATRIXCODE_RELATIONS_HPP
#define MATRIXCODE_RELATIONS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "matrixcode/diagnostics.hpp"
#include "matrixcode/expr.hpp"
#include "matrixcode/state.hpp"

namespace mxc {

/// The builtin relation catalogue. Stream builtins act on the variables
/// named `left`, `right` and `out`; tape builtins on the single tape.
enum class BuiltinKind { GetL, GetR, NGetL, NGetR, PutL, PutR, Rd, Wr, Dir };

struct BuiltinCall {
  BuiltinKind kind = BuiltinKind::GetL;
  /// Bound variable for getL/getR, unused otherwise.
  std::string var;
  /// Symbol for rd/wr.
  char symbol = ' ';
  Direction dir = Direction::Stay;

  int var_slot = -1;
  VarKind var_kind = VarKind::Int;
  int stream_slot = -1;
  int out_slot = -1;
  int tape_slot = -1;
  SourceLoc loc;
};

bool operator==(const BuiltinCall& a, const BuiltinCall& b);

const char* builtin_name(BuiltinKind kind);
/// Counter key: both polarities of a stream test share one counter.
const char* counter_name(BuiltinKind kind);
bool parse_builtin_name(const std::string& s, BuiltinKind& out);
/// Tests (rd, get, nget) never change the data they inspect except for
/// binding the head value; they may start a translatable rule.
bool is_test(BuiltinKind kind);

struct Assignment {
  std::string target;
  /// Present for `a[i] = e`.
  std::optional<Expr> index;
  Expr value;
  int slot = -1;
  VarKind kind = VarKind::Int;
  SourceLoc loc;
};

bool operator==(const Assignment& a, const Assignment& b);

/// A relation over data states built from guards, assignment lists,
/// builtins, sequential composition and union.
struct RelationExpr {
  enum class Kind { Guard, Assign, Builtin, Seq, Union };

  Kind kind = Kind::Guard;
  Expr guard;
  std::vector<Assignment> assigns;
  BuiltinCall builtin;
  /// Exactly two operands for Seq and Union.
  std::vector<RelationExpr> parts;
  SourceLoc loc;

  static RelationExpr make_guard(Expr e);
  static RelationExpr make_assign(std::vector<Assignment> as);
  static RelationExpr make_builtin(BuiltinCall b);
  static RelationExpr seq(RelationExpr a, RelationExpr b);
  static RelationExpr alt(RelationExpr a, RelationExpr b);
};

bool operator==(const RelationExpr& a, const RelationExpr& b);

/// Flattens nested Seq nodes left to right.
std::vector<const RelationExpr*> seq_items(const RelationExpr& r);

/// Canonical DSL text for a rule, e.g. `[x > 0]; { x = x - 1; }`.
std::string to_source(const RelationExpr& r);

/// Per-step bookkeeping for builtin call counts. A stream test counts
/// once per step whatever its polarity, so the scan of `getL(u) | ngetL`
/// costs one call just as the translated `if (getL(u)) ... else ...` does.
class CallCounter {
 public:
  void begin_step() { tested_.clear(); }
  void record(BuiltinKind kind);
  const std::map<std::string, std::int64_t>& counts() const { return counts_; }

 private:
  std::map<std::string, std::int64_t> counts_;
  std::set<std::string> tested_;
};

/// Evaluates `e` in `d`. Pure; throws EvalError for unset or unbound
/// reads, bad indices, division by zero, overflow and type mismatches.
Value eval_expr(const DataState& d, const Expr& e);
bool eval_condition(const DataState& d, const Expr& e);

/// {d' | (d, d') in [[r]]}, sorted and duplicate free.
StateSet image(const RelationExpr& r, const DataState& d, CallCounter* counter = nullptr);

StateSet builtin_image(const BuiltinCall& b, const DataState& d, CallCounter* counter = nullptr);

/// Resolves variable references in `e` against `schema`. Quantifier
/// variables shadow state variables. Unknown names are reported.
void resolve(Expr& e, const Schema& schema, Diagnostics& diags,
             std::vector<std::string>* scope = nullptr);
void resolve(RelationExpr& r, const Schema& schema, Diagnostics& diags);

/// Every state variable read or written by `r`.
std::set<std::string> variables_of(const RelationExpr& r);

}  // namespace mxc

#endif  // MATRIXCODE_RELATIONS_HPP
