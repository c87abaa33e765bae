#include "matrixcode/expr.hpp"

namespace mxc {

const char* op_token(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Mod: return "%";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Not: return "!";
    case Op::Neg: return "-";
  }
  return "?";
}

int op_precedence(Op op) {
  switch (op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Eq: case Op::Ne: return 3;
    case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: return 4;
    case Op::Add: case Op::Sub: return 5;
    case Op::Mul: case Op::Div: case Op::Mod: return 6;
    case Op::Not: case Op::Neg: return 7;
  }
  return 0;
}

bool is_comparison(Op op) {
  return op == Op::Eq || op == Op::Ne || op == Op::Lt || op == Op::Le || op == Op::Gt ||
         op == Op::Ge;
}

Expr Expr::integer(std::int64_t v, SourceLoc loc) {
  Expr e;
  e.kind = Kind::Int;
  e.value = v;
  e.loc = loc;
  return e;
}

Expr Expr::boolean(bool v, SourceLoc loc) {
  Expr e;
  e.kind = Kind::Bool;
  e.value = v ? 1 : 0;
  e.loc = loc;
  return e;
}

Expr Expr::character(char c, SourceLoc loc) {
  Expr e;
  e.kind = Kind::Char;
  e.value = static_cast<unsigned char>(c);
  e.loc = loc;
  return e;
}

Expr Expr::var(std::string name, SourceLoc loc) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  e.loc = loc;
  return e;
}

Expr Expr::index(Expr array, Expr idx, SourceLoc loc) {
  Expr e;
  e.kind = Kind::Index;
  e.args = {std::move(array), std::move(idx)};
  e.loc = loc;
  return e;
}

Expr Expr::len(Expr operand, SourceLoc loc) {
  Expr e;
  e.kind = Kind::Len;
  e.args = {std::move(operand)};
  e.loc = loc;
  return e;
}

Expr Expr::unary(Op op, Expr operand, SourceLoc loc) {
  Expr e;
  e.kind = Kind::Unary;
  e.op = op;
  e.args = {std::move(operand)};
  e.loc = loc;
  return e;
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs, SourceLoc loc) {
  Expr e;
  e.kind = Kind::Binary;
  e.op = op;
  e.args = {std::move(lhs), std::move(rhs)};
  e.loc = loc;
  return e;
}

Expr Expr::quantifier(bool forall, std::string var, Expr lo, Expr hi, Expr body, SourceLoc loc) {
  Expr e;
  e.kind = forall ? Kind::Forall : Kind::Exists;
  e.name = std::move(var);
  e.args = {std::move(lo), std::move(hi), std::move(body)};
  e.loc = loc;
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Int:
    case Expr::Kind::Bool:
    case Expr::Kind::Char:
      return a.value == b.value;
    case Expr::Kind::Var:
      return a.name == b.name;
    case Expr::Kind::Unary:
    case Expr::Kind::Binary:
      if (a.op != b.op) return false;
      break;
    case Expr::Kind::Forall:
    case Expr::Kind::Exists:
      if (a.name != b.name) return false;
      break;
    default:
      break;
  }
  return a.args == b.args;
}

namespace {

std::string char_literal(char c) {
  switch (c) {
    case '\'': return "'\\''";
    case '\\': return "'\\\\'";
    case '\n': return "'\\n'";
    default: return std::string("'") + c + "'";
  }
}

int precedence_of(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Unary:
    case Expr::Kind::Binary:
      return op_precedence(e.op);
    case Expr::Kind::Int:
      return e.value < 0 ? op_precedence(Op::Neg) : 10;
    default:
      return 10;
  }
}

std::string render(const Expr& e, int context) {
  std::string out;
  switch (e.kind) {
    case Expr::Kind::Int:
      out = std::to_string(e.value);
      break;
    case Expr::Kind::Bool:
      out = e.value ? "true" : "false";
      break;
    case Expr::Kind::Char:
      out = char_literal(static_cast<char>(e.value));
      break;
    case Expr::Kind::Var:
      out = e.name;
      break;
    case Expr::Kind::Index:
      out = render(e.args[0], 10) + "[" + render(e.args[1], 0) + "]";
      break;
    case Expr::Kind::Len:
      out = "len(" + render(e.args[0], 0) + ")";
      break;
    case Expr::Kind::Unary:
      out = std::string(op_token(e.op)) + render(e.args[0], op_precedence(e.op) + 1);
      break;
    case Expr::Kind::Binary: {
      const int p = op_precedence(e.op);
      // Left associative: the right operand needs parentheses at equal strength.
      out = render(e.args[0], p) + " " + op_token(e.op) + " " + render(e.args[1], p + 1);
      break;
    }
    case Expr::Kind::Forall:
    case Expr::Kind::Exists:
      out = std::string(e.kind == Expr::Kind::Forall ? "forall " : "exists ") + e.name + " in " +
            render(e.args[0], 5) + ".." + render(e.args[1], 5) + " (" + render(e.args[2], 0) + ")";
      break;
  }
  if (precedence_of(e) < context) return "(" + out + ")";
  return out;
}

}  // namespace

std::string to_source(const Expr& e) { return render(e, 0); }

bool contains_quantifier(const Expr& e) {
  if (e.is_quantifier()) return true;
  for (const auto& a : e.args)
    if (contains_quantifier(a)) return true;
  return false;
}

}  // namespace mxc
