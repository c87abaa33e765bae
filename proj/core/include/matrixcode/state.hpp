#ifndef MATRIXCODE_STATE_HPP
#define MATRIXCODE_STATE_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matrixcode/expr.hpp"
#include "matrixcode/value.hpp"

namespace mxc {

struct VarDecl {
  std::string name;
  VarKind kind = VarKind::Int;
  /// Parameters become arguments of emitted functions; the rest are locals.
  bool param = false;
  /// Array length, evaluated once when an initial state is built.
  std::optional<Expr> length;
  SourceLoc loc;
};

bool operator==(const VarDecl& a, const VarDecl& b);

/// Ordered variable declarations; defines the slot layout of DataState.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<VarDecl> vars) : vars_(std::move(vars)) {}

  const std::vector<VarDecl>& vars() const noexcept { return vars_; }
  std::size_t size() const noexcept { return vars_.size(); }
  const VarDecl& operator[](std::size_t i) const { return vars_[i]; }

  std::optional<std::size_t> slot_of(std::string_view name) const;
  /// Appends a declaration and returns its slot.
  std::size_t add(VarDecl decl);

  bool operator==(const Schema&) const = default;

 private:
  std::vector<VarDecl> vars_;
};

/// A data state: one value per declared variable, compared structurally.
class DataState {
 public:
  DataState() = default;
  explicit DataState(std::size_t n) : slots_(n) {}

  std::size_t size() const noexcept { return slots_.size(); }
  const Value& operator[](std::size_t slot) const { return slots_[slot]; }
  Value& operator[](std::size_t slot) { return slots_[slot]; }

  auto operator<=>(const DataState&) const = default;
  bool operator==(const DataState&) const = default;

 private:
  std::vector<Value> slots_;
};

using StateSet = std::vector<DataState>;

/// Sorts and removes duplicates in place.
void normalize(StateSet& states);

/// Builds an initial state: the given bindings, arrays allocated to their
/// declared length with unset elements, empty streams, blank tape, and
/// every other variable unset. Throws EvalError on unknown names, type
/// mismatches, or array-length disagreement.
DataState make_state(const Schema& schema, const std::map<std::string, Value>& bindings);

/// `name=value` rendering of every slot, e.g. `{k=2, p={2,3,?}}`.
std::string format_state(const Schema& schema, const DataState& d);

/// Coerces a value to the declared kind of a slot (Sym widens to Int,
/// Int narrows to Sym when in range). Throws EvalError on mismatch.
Value coerce_to(VarKind kind, Value v, const std::string& name, SourceLoc loc);

}  // namespace mxc

#endif  // MATRIXCODE_STATE_HPP
