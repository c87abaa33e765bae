#ifndef MATRIXCODE_DSL_HPP
#define MATRIXCODE_DSL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "matrixcode/diagnostics.hpp"
#include "matrixcode/matrix.hpp"
#include "matrixcode/verifier.hpp"

namespace mxc {

/// Everything one `.mxc` file carries.
struct Program {
  CodeMatrix matrix;
  std::optional<ConditionVector> conditions;
  /// Exhaustive checking domain (`domain { ... }`).
  std::optional<DomainSpec> domain;
  /// Start states for sample runs (`samples { ... }`).
  std::optional<DomainSpec> samples;
};

bool operator==(const Program& a, const Program& b);

struct ParseResult {
  std::optional<Program> program;
  Diagnostics diagnostics;

  bool ok() const { return program.has_value() && !has_errors(diagnostics); }
};

/// Parses, resolves and validates one file. On any error `program` is
/// empty and every problem found is listed with its line and column.
ParseResult parse_program(std::string_view text);

/// Thrown by the fragment parsers below.
class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLoc loc, const std::string& msg) : std::runtime_error(msg), loc_(loc) {}
  SourceLoc loc() const noexcept { return loc_; }

 private:
  SourceLoc loc_;
};

/// Unresolved expression or rule, for tests and tools.
Expr parse_expr(std::string_view text);
RelationExpr parse_rule(std::string_view text);

/// Literal syntax shared by files and the command line: `3`, `-2`, `'x'`,
/// `true`, `[1,2,?]`, `"-123"`, `tape("A ( ) A", 1)` or
/// `tape("A ( ) A", 1, R)`. Blanks inside tape strings are ignored.
Value parse_literal(std::string_view text);
/// Converts a parsed literal to the representation of `kind` (lists become
/// streams, strings become text streams). Throws EvalError on mismatch.
Value literal_for(VarKind kind, const Value& literal, const std::string& name);
/// Renders a value as a literal that `parse_literal` reads back.
std::string format_literal(const Value& v, VarKind kind);

/// `name=literal` bindings checked against `schema`.
std::map<std::string, Value> parse_bindings(const std::vector<std::string>& items, const Schema& schema);

/// Canonical re-serialization: parse(render_source(p)) == p.
std::string render_source(const Program& p);

/// Tabular layout: one column per from-state with S rightmost and H left
/// out, one row per to-state with S left out; each rule on its own line.
/// Row labels carry condition labels when `v` is given.
std::string render_tabular(const CodeMatrix& m, const ConditionVector* v = nullptr);

}  // namespace mxc

#endif  // MATRIXCODE_DSL_HPP
