#ifndef MATRIXCODE_EXPR_HPP
#define MATRIXCODE_EXPR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "matrixcode/value.hpp"

namespace mxc {

enum class Op {
  Add, Sub, Mul, Div, Mod,
  Eq, Ne, Lt, Le, Gt, Ge,
  And, Or,
  Not, Neg,
};

const char* op_token(Op op);
/// Binding strength used by both printers; larger binds tighter.
int op_precedence(Op op);
bool is_comparison(Op op);

/// Expression tree for guards, right-hand sides and conditions.
///
/// Variables are resolved after parsing: `slot` names a state variable,
/// `bound` a quantifier variable counted from the outermost quantifier.
/// Quantifier nodes hold {lo, hi, body} in `args`; ranges are inclusive.
struct Expr {
  enum class Kind { Int, Bool, Char, Var, Index, Len, Unary, Binary, Forall, Exists };

  Kind kind = Kind::Int;
  Op op = Op::Add;
  std::int64_t value = 0;
  std::string name;
  int slot = -1;
  int bound = -1;
  std::vector<Expr> args;
  SourceLoc loc;

  static Expr integer(std::int64_t v, SourceLoc loc = {});
  static Expr boolean(bool v, SourceLoc loc = {});
  static Expr character(char c, SourceLoc loc = {});
  static Expr var(std::string name, SourceLoc loc = {});
  static Expr index(Expr array, Expr idx, SourceLoc loc = {});
  static Expr len(Expr operand, SourceLoc loc = {});
  static Expr unary(Op op, Expr operand, SourceLoc loc = {});
  static Expr binary(Op op, Expr lhs, Expr rhs, SourceLoc loc = {});
  static Expr quantifier(bool forall, std::string var, Expr lo, Expr hi, Expr body,
                         SourceLoc loc = {});

  bool is_quantifier() const { return kind == Kind::Forall || kind == Kind::Exists; }
};

/// Structural equality; source locations and resolution indices are ignored.
bool operator==(const Expr& a, const Expr& b);

/// Canonical DSL text with minimal parentheses.
std::string to_source(const Expr& e);

/// Calls `f(name)` for every free state-variable reference.
template <typename F>
void for_each_var(const Expr& e, F&& f) {
  if (e.kind == Expr::Kind::Var && e.bound < 0) f(e);
  for (const auto& a : e.args) for_each_var(a, f);
}

bool contains_quantifier(const Expr& e);

}  // namespace mxc

#endif  // MATRIXCODE_EXPR_HPP
