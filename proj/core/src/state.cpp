#include "matrixcode/state.hpp"

#include <algorithm>

#include "matrixcode/relations.hpp"

namespace mxc {

bool operator==(const VarDecl& a, const VarDecl& b) {
  return a.name == b.name && a.kind == b.kind && a.param == b.param && a.length == b.length;
}

std::optional<std::size_t> Schema::slot_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Schema::add(VarDecl decl) {
  vars_.push_back(std::move(decl));
  return vars_.size() - 1;
}

void normalize(StateSet& states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
}

Value coerce_to(VarKind kind, Value v, const std::string& name, SourceLoc loc) {
  if (is_unset(v)) return v;
  auto mismatch = [&]() -> EvalError {
    return EvalError(loc, "type mismatch: cannot store " + value_type_name(v) + " in " +
                              kind_name(kind) + " variable '" + name + "'");
  };
  switch (kind) {
    case VarKind::Int:
      if (std::holds_alternative<std::int64_t>(v)) return v;
      if (auto s = std::get_if<Sym>(&v)) return static_cast<std::int64_t>(static_cast<unsigned char>(s->c));
      throw mismatch();
    case VarKind::Bool:
      if (std::holds_alternative<bool>(v)) return v;
      throw mismatch();
    case VarKind::Sym:
      if (std::holds_alternative<Sym>(v)) return v;
      if (auto i = std::get_if<std::int64_t>(&v); i && *i >= 0 && *i < 256)
        return Sym{static_cast<char>(*i)};
      throw mismatch();
    case VarKind::Array:
      if (std::holds_alternative<IntArray>(v)) return v;
      throw mismatch();
    case VarKind::Stream:
    case VarKind::Text:
      if (std::holds_alternative<Stream>(v)) return v;
      throw mismatch();
    case VarKind::Tape:
      if (std::holds_alternative<Tape>(v)) return v;
      throw mismatch();
  }
  throw mismatch();
}

DataState make_state(const Schema& schema, const std::map<std::string, Value>& bindings) {
  DataState d(schema.size());
  for (const auto& [name, value] : bindings) {
    auto slot = schema.slot_of(name);
    if (!slot) throw EvalError({}, "no variable named '" + name + "'");
    const auto& decl = schema[*slot];
    if (decl.kind == VarKind::Array) continue;
    d[*slot] = coerce_to(decl.kind, value, name, {});
  }
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const auto& decl = schema[i];
    switch (decl.kind) {
      case VarKind::Array: {
        std::optional<std::int64_t> len;
        if (decl.length) {
          auto v = eval_expr(d, *decl.length);
          auto n = std::get_if<std::int64_t>(&v);
          if (!n || *n < 0)
            throw EvalError(decl.loc, "array '" + decl.name + "' has invalid length");
          len = *n;
        }
        if (auto it = bindings.find(decl.name); it != bindings.end()) {
          auto v = coerce_to(VarKind::Array, it->second, decl.name, {});
          auto& arr = std::get<IntArray>(v);
          if (len && static_cast<std::int64_t>(arr.items.size()) != *len)
            throw EvalError(decl.loc, "array '" + decl.name + "' must have length " +
                                          std::to_string(*len));
          d[i] = std::move(v);
        } else {
          if (!len) throw EvalError(decl.loc, "array '" + decl.name + "' needs a length");
          d[i] = IntArray{std::vector<std::optional<std::int64_t>>(static_cast<std::size_t>(*len))};
        }
        break;
      }
      case VarKind::Stream:
      case VarKind::Text:
        if (is_unset(d[i])) d[i] = Stream{};
        break;
      case VarKind::Tape:
        if (is_unset(d[i])) d[i] = Tape{};
        break;
      default:
        break;
    }
  }
  return d;
}

std::string format_state(const Schema& schema, const DataState& d) {
  std::string out = "{";
  for (std::size_t i = 0; i < schema.size() && i < d.size(); ++i) {
    if (i) out += ", ";
    out += schema[i].name + "=" + format_value(d[i], schema[i].kind);
  }
  return out + "}";
}

}  // namespace mxc
