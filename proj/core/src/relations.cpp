#include "matrixcode/relations.hpp"

#include <algorithm>
#include <limits>

namespace mxc {

// ---------------------------------------------------------------------------
// Builtin catalogue

const char* builtin_name(BuiltinKind kind) {
  switch (kind) {
    case BuiltinKind::GetL: return "getL";
    case BuiltinKind::GetR: return "getR";
    case BuiltinKind::NGetL: return "ngetL";
    case BuiltinKind::NGetR: return "ngetR";
    case BuiltinKind::PutL: return "putL";
    case BuiltinKind::PutR: return "putR";
    case BuiltinKind::Rd: return "rd";
    case BuiltinKind::Wr: return "wr";
    case BuiltinKind::Dir: return "dir";
  }
  return "?";
}

const char* counter_name(BuiltinKind kind) {
  switch (kind) {
    case BuiltinKind::NGetL: return "getL";
    case BuiltinKind::NGetR: return "getR";
    default: return builtin_name(kind);
  }
}

bool parse_builtin_name(const std::string& s, BuiltinKind& out) {
  static const BuiltinKind all[] = {BuiltinKind::GetL, BuiltinKind::GetR, BuiltinKind::NGetL,
                                    BuiltinKind::NGetR, BuiltinKind::PutL, BuiltinKind::PutR,
                                    BuiltinKind::Rd,   BuiltinKind::Wr,   BuiltinKind::Dir};
  for (auto k : all) {
    if (s == builtin_name(k)) {
      out = k;
      return true;
    }
  }
  return false;
}

bool is_test(BuiltinKind kind) {
  return kind == BuiltinKind::GetL || kind == BuiltinKind::GetR || kind == BuiltinKind::NGetL ||
         kind == BuiltinKind::NGetR || kind == BuiltinKind::Rd;
}

bool operator==(const BuiltinCall& a, const BuiltinCall& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case BuiltinKind::GetL:
    case BuiltinKind::GetR:
      return a.var == b.var;
    case BuiltinKind::Rd:
    case BuiltinKind::Wr:
      return a.symbol == b.symbol;
    case BuiltinKind::Dir:
      return a.dir == b.dir;
    default:
      return true;
  }
}

bool operator==(const Assignment& a, const Assignment& b) {
  return a.target == b.target && a.index == b.index && a.value == b.value;
}

// ---------------------------------------------------------------------------
// RelationExpr construction and printing

RelationExpr RelationExpr::make_guard(Expr e) {
  RelationExpr r;
  r.kind = Kind::Guard;
  r.loc = e.loc;
  r.guard = std::move(e);
  return r;
}

RelationExpr RelationExpr::make_assign(std::vector<Assignment> as) {
  RelationExpr r;
  r.kind = Kind::Assign;
  if (!as.empty()) r.loc = as.front().loc;
  r.assigns = std::move(as);
  return r;
}

RelationExpr RelationExpr::make_builtin(BuiltinCall b) {
  RelationExpr r;
  r.kind = Kind::Builtin;
  r.loc = b.loc;
  r.builtin = std::move(b);
  return r;
}

RelationExpr RelationExpr::seq(RelationExpr a, RelationExpr b) {
  RelationExpr r;
  r.kind = Kind::Seq;
  r.loc = a.loc;
  r.parts.push_back(std::move(a));
  r.parts.push_back(std::move(b));
  return r;
}

RelationExpr RelationExpr::alt(RelationExpr a, RelationExpr b) {
  RelationExpr r;
  r.kind = Kind::Union;
  r.loc = a.loc;
  r.parts.push_back(std::move(a));
  r.parts.push_back(std::move(b));
  return r;
}

bool operator==(const RelationExpr& a, const RelationExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case RelationExpr::Kind::Guard: return a.guard == b.guard;
    case RelationExpr::Kind::Assign: return a.assigns == b.assigns;
    case RelationExpr::Kind::Builtin: return a.builtin == b.builtin;
    default: return a.parts == b.parts;
  }
}

namespace {

void collect_seq(const RelationExpr& r, std::vector<const RelationExpr*>& out) {
  if (r.kind == RelationExpr::Kind::Seq) {
    collect_seq(r.parts[0], out);
    collect_seq(r.parts[1], out);
  } else {
    out.push_back(&r);
  }
}

std::string builtin_source(const BuiltinCall& b) {
  switch (b.kind) {
    case BuiltinKind::GetL:
    case BuiltinKind::GetR:
      return std::string(builtin_name(b.kind)) + "(" + b.var + ")";
    case BuiltinKind::Rd:
    case BuiltinKind::Wr:
      return std::string(builtin_name(b.kind)) + "(" + to_source(Expr::character(b.symbol)) + ")";
    case BuiltinKind::Dir:
      return std::string("dir(") + static_cast<char>(b.dir) + ")";
    default:
      return builtin_name(b.kind);
  }
}

}  // namespace

std::vector<const RelationExpr*> seq_items(const RelationExpr& r) {
  std::vector<const RelationExpr*> out;
  collect_seq(r, out);
  return out;
}

std::string to_source(const RelationExpr& r) {
  switch (r.kind) {
    case RelationExpr::Kind::Guard:
      return "[" + to_source(r.guard) + "]";
    case RelationExpr::Kind::Assign: {
      std::string out = "{";
      for (const auto& a : r.assigns) {
        out += " " + a.target;
        if (a.index) out += "[" + to_source(*a.index) + "]";
        out += " = " + to_source(a.value) + ";";
      }
      return out + " }";
    }
    case RelationExpr::Kind::Builtin:
      return builtin_source(r.builtin);
    case RelationExpr::Kind::Seq: {
      std::string out;
      for (auto* item : seq_items(r)) {
        if (!out.empty()) out += "; ";
        if (item->kind == RelationExpr::Kind::Union) out += "(" + to_source(*item) + ")";
        else out += to_source(*item);
      }
      return out;
    }
    case RelationExpr::Kind::Union:
      return to_source(r.parts[0]) + " | " + to_source(r.parts[1]);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Call counting

void CallCounter::record(BuiltinKind kind) {
  const std::string key = counter_name(kind);
  switch (kind) {
    case BuiltinKind::GetL:
    case BuiltinKind::GetR:
    case BuiltinKind::NGetL:
    case BuiltinKind::NGetR:
      if (!tested_.insert(key).second) return;
      break;
    default:
      break;
  }
  ++counts_[key];
}

// ---------------------------------------------------------------------------
// Expression evaluation

namespace {

class Evaluator {
 public:
  explicit Evaluator(const DataState& d) : d_(d) {}

  Value eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Int:
        return e.value;
      case Expr::Kind::Bool:
        return e.value != 0;
      case Expr::Kind::Char:
        return Sym{static_cast<char>(e.value)};
      case Expr::Kind::Var:
        return read_var(e);
      case Expr::Kind::Index:
        return index(e);
      case Expr::Kind::Len:
        return length(e);
      case Expr::Kind::Unary:
        if (e.op == Op::Not) return !as_bool(eval(e.args[0]), e.args[0]);
        return negate(as_int(eval(e.args[0]), e.args[0]), e);
      case Expr::Kind::Binary:
        return binary(e);
      case Expr::Kind::Forall:
      case Expr::Kind::Exists:
        return quantify(e);
    }
    throw EvalError(e.loc, "malformed expression");
  }

  bool condition(const Expr& e) { return as_bool(eval(e), e); }

 private:
  const Value& slot_ref(const Expr& v) {
    if (v.kind != Expr::Kind::Var || v.slot < 0 || static_cast<std::size_t>(v.slot) >= d_.size())
      throw EvalError(v.loc, "unbound variable '" + v.name + "'");
    const Value& val = d_[static_cast<std::size_t>(v.slot)];
    if (is_unset(val)) throw EvalError(v.loc, "variable '" + v.name + "' is unset");
    return val;
  }

  Value read_var(const Expr& e) {
    if (e.bound >= 0) {
      if (static_cast<std::size_t>(e.bound) >= bound_.size())
        throw EvalError(e.loc, "unbound variable '" + e.name + "'");
      return bound_[static_cast<std::size_t>(e.bound)];
    }
    return slot_ref(e);
  }

  Value index(const Expr& e) {
    const Expr& base = e.args[0];
    const auto i = as_int(eval(e.args[1]), e.args[1]);
    if (base.kind != Expr::Kind::Var || base.bound >= 0)
      throw EvalError(e.loc, "type mismatch: only arrays and streams can be indexed");
    const Value& v = slot_ref(base);
    if (auto arr = std::get_if<IntArray>(&v)) {
      if (i < 0 || i >= static_cast<std::int64_t>(arr->items.size()))
        throw EvalError(e.loc, "index " + std::to_string(i) + " out of bounds for '" + base.name +
                                   "' of length " + std::to_string(arr->items.size()));
      const auto& item = arr->items[static_cast<std::size_t>(i)];
      if (!item)
        throw EvalError(e.loc, "element " + base.name + "[" + std::to_string(i) + "] is unset");
      return *item;
    }
    if (auto st = std::get_if<Stream>(&v)) {
      if (i < 0 || i >= static_cast<std::int64_t>(st->items.size()))
        throw EvalError(e.loc, "index " + std::to_string(i) + " out of bounds for stream '" +
                                   base.name + "'");
      return st->items[static_cast<std::size_t>(i)];
    }
    throw EvalError(e.loc, "type mismatch: '" + base.name + "' is " + value_type_name(v) +
                               ", not indexable");
  }

  Value length(const Expr& e) {
    const Expr& base = e.args[0];
    if (base.kind != Expr::Kind::Var || base.bound >= 0)
      throw EvalError(e.loc, "type mismatch: len() needs an array or stream variable");
    const Value& v = slot_ref(base);
    if (auto arr = std::get_if<IntArray>(&v)) return static_cast<std::int64_t>(arr->items.size());
    if (auto st = std::get_if<Stream>(&v)) return static_cast<std::int64_t>(st->items.size());
    throw EvalError(e.loc, "type mismatch: len() of " + value_type_name(v));
  }

  static std::int64_t as_int(const Value& v, const Expr& at) {
    if (auto i = std::get_if<std::int64_t>(&v)) return *i;
    if (auto s = std::get_if<Sym>(&v)) return static_cast<unsigned char>(s->c);
    throw EvalError(at.loc, "type mismatch: expected int, got " + value_type_name(v));
  }

  static bool as_bool(const Value& v, const Expr& at) {
    if (auto b = std::get_if<bool>(&v)) return *b;
    throw EvalError(at.loc, "type mismatch: expected bool, got " + value_type_name(v));
  }

  static std::int64_t negate(std::int64_t v, const Expr& e) {
    if (v == std::numeric_limits<std::int64_t>::min()) throw EvalError(e.loc, "integer overflow");
    return -v;
  }

  Value binary(const Expr& e) {
    const Expr& l = e.args[0];
    const Expr& r = e.args[1];
    if (e.op == Op::And) return condition(l) && condition(r);
    if (e.op == Op::Or) return condition(l) || condition(r);
    const Value lv = eval(l);
    const Value rv = eval(r);
    if (e.op == Op::Eq || e.op == Op::Ne) {
      auto lb = std::get_if<bool>(&lv);
      auto rb = std::get_if<bool>(&rv);
      if (lb || rb) {
        if (!lb || !rb) throw EvalError(e.loc, "type mismatch: comparing bool with non-bool");
        return e.op == Op::Eq ? *lb == *rb : *lb != *rb;
      }
    }
    const auto a = as_int(lv, l);
    const auto b = as_int(rv, r);
    std::int64_t out = 0;
    switch (e.op) {
      case Op::Add:
        if (__builtin_add_overflow(a, b, &out)) throw EvalError(e.loc, "integer overflow");
        return out;
      case Op::Sub:
        if (__builtin_sub_overflow(a, b, &out)) throw EvalError(e.loc, "integer overflow");
        return out;
      case Op::Mul:
        if (__builtin_mul_overflow(a, b, &out)) throw EvalError(e.loc, "integer overflow");
        return out;
      case Op::Div:
      case Op::Mod:
        if (b == 0) throw EvalError(e.loc, "division by zero");
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1)
          throw EvalError(e.loc, "integer overflow");
        return e.op == Op::Div ? a / b : a % b;
      case Op::Eq: return a == b;
      case Op::Ne: return a != b;
      case Op::Lt: return a < b;
      case Op::Le: return a <= b;
      case Op::Gt: return a > b;
      case Op::Ge: return a >= b;
      default:
        break;
    }
    throw EvalError(e.loc, "malformed binary expression");
  }

  Value quantify(const Expr& e) {
    const bool forall = e.kind == Expr::Kind::Forall;
    const auto lo = as_int(eval(e.args[0]), e.args[0]);
    const auto hi = as_int(eval(e.args[1]), e.args[1]);
    bound_.push_back(0);
    bool result = forall;
    for (auto i = lo; i <= hi; ++i) {
      bound_.back() = i;
      if (condition(e.args[2]) != forall) {
        result = !forall;
        break;
      }
    }
    bound_.pop_back();
    return result;
  }

  const DataState& d_;
  std::vector<std::int64_t> bound_;
};

void apply_assignment(DataState& d, const Assignment& a) {
  if (a.slot < 0) throw EvalError(a.loc, "unbound variable '" + a.target + "'");
  Value& target = d[static_cast<std::size_t>(a.slot)];
  if (a.index) {
    const auto iv = eval_expr(d, *a.index);
    const auto* ip = std::get_if<std::int64_t>(&iv);
    if (!ip) throw EvalError(a.index->loc, "type mismatch: array index must be int");
    auto value = eval_expr(d, a.value);
    if (auto s = std::get_if<Sym>(&value))
      value = static_cast<std::int64_t>(static_cast<unsigned char>(s->c));
    const auto* vp = std::get_if<std::int64_t>(&value);
    if (!vp) throw EvalError(a.value.loc, "type mismatch: array elements are int");
    auto* arr = std::get_if<IntArray>(&target);
    if (!arr) throw EvalError(a.loc, "'" + a.target + "' is not an initialized array");
    if (*ip < 0 || *ip >= static_cast<std::int64_t>(arr->items.size()))
      throw EvalError(a.loc, "index " + std::to_string(*ip) + " out of bounds for '" + a.target +
                                 "' of length " + std::to_string(arr->items.size()));
    arr->items[static_cast<std::size_t>(*ip)] = *vp;
    return;
  }
  target = coerce_to(a.kind, eval_expr(d, a.value), a.target, a.loc);
}

const Stream& stream_at(const DataState& d, int slot, const BuiltinCall& b) {
  if (slot < 0) throw EvalError(b.loc, std::string(builtin_name(b.kind)) + ": stream not declared");
  auto* s = std::get_if<Stream>(&d[static_cast<std::size_t>(slot)]);
  if (!s) throw EvalError(b.loc, std::string(builtin_name(b.kind)) + ": stream is not initialized");
  return *s;
}

Tape& tape_at(DataState& d, const BuiltinCall& b) {
  if (b.tape_slot < 0) throw EvalError(b.loc, std::string(builtin_name(b.kind)) + ": no tape declared");
  auto* t = std::get_if<Tape>(&d[static_cast<std::size_t>(b.tape_slot)]);
  if (!t) throw EvalError(b.loc, std::string(builtin_name(b.kind)) + ": tape is not initialized");
  return *t;
}

}  // namespace

Value eval_expr(const DataState& d, const Expr& e) { return Evaluator(d).eval(e); }

bool eval_condition(const DataState& d, const Expr& e) { return Evaluator(d).condition(e); }

StateSet builtin_image(const BuiltinCall& b, const DataState& d, CallCounter* counter) {
  if (counter) counter->record(b.kind);
  switch (b.kind) {
    case BuiltinKind::GetL:
    case BuiltinKind::GetR: {
      const auto& s = stream_at(d, b.stream_slot, b);
      if (s.items.empty()) return {};
      DataState out = d;
      out[static_cast<std::size_t>(b.var_slot)] =
          coerce_to(b.var_kind, s.items.front(), b.var, b.loc);
      return {std::move(out)};
    }
    case BuiltinKind::NGetL:
    case BuiltinKind::NGetR:
      if (stream_at(d, b.stream_slot, b).items.empty()) return {d};
      return {};
    case BuiltinKind::PutL:
    case BuiltinKind::PutR: {
      if (stream_at(d, b.stream_slot, b).items.empty())
        throw EvalError(b.loc, std::string(builtin_name(b.kind)) + " on an empty stream");
      stream_at(d, b.out_slot, b);
      DataState out = d;
      auto& src = std::get<Stream>(out[static_cast<std::size_t>(b.stream_slot)]);
      auto& dst = std::get<Stream>(out[static_cast<std::size_t>(b.out_slot)]);
      dst.items.push_back(src.items.front());
      src.items.pop_front();
      return {std::move(out)};
    }
    case BuiltinKind::Rd: {
      DataState copy = d;
      if (tape_at(copy, b).read() == b.symbol) return {d};
      return {};
    }
    case BuiltinKind::Wr: {
      DataState out = d;
      tape_at(out, b).write(b.symbol);
      return {std::move(out)};
    }
    case BuiltinKind::Dir: {
      DataState out = d;
      tape_at(out, b).dir = b.dir;
      return {std::move(out)};
    }
  }
  return {};
}

StateSet image(const RelationExpr& r, const DataState& d, CallCounter* counter) {
  switch (r.kind) {
    case RelationExpr::Kind::Guard:
      if (eval_condition(d, r.guard)) return {d};
      return {};
    case RelationExpr::Kind::Assign: {
      DataState out = d;
      for (const auto& a : r.assigns) apply_assignment(out, a);
      return {std::move(out)};
    }
    case RelationExpr::Kind::Builtin:
      return builtin_image(r.builtin, d, counter);
    case RelationExpr::Kind::Seq: {
      StateSet out;
      for (const auto& mid : image(r.parts[0], d, counter)) {
        auto next = image(r.parts[1], mid, counter);
        out.insert(out.end(), std::make_move_iterator(next.begin()),
                   std::make_move_iterator(next.end()));
      }
      normalize(out);
      return out;
    }
    case RelationExpr::Kind::Union: {
      StateSet out = image(r.parts[0], d, counter);
      auto rhs = image(r.parts[1], d, counter);
      out.insert(out.end(), std::make_move_iterator(rhs.begin()), std::make_move_iterator(rhs.end()));
      normalize(out);
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Name resolution

void resolve(Expr& e, const Schema& schema, Diagnostics& diags, std::vector<std::string>* scope) {
  std::vector<std::string> local;
  if (!scope) scope = &local;
  switch (e.kind) {
    case Expr::Kind::Var: {
      for (std::size_t i = scope->size(); i-- > 0;) {
        if ((*scope)[i] == e.name) {
          e.bound = static_cast<int>(i);
          e.slot = -1;
          return;
        }
      }
      if (auto slot = schema.slot_of(e.name)) {
        e.slot = static_cast<int>(*slot);
        e.bound = -1;
      } else {
        diags.push_back({Severity::Error, e.loc, "undeclared variable '" + e.name + "'"});
      }
      return;
    }
    case Expr::Kind::Index:
    case Expr::Kind::Len: {
      Expr& base = e.args[0];
      resolve(base, schema, diags, scope);
      if (base.kind != Expr::Kind::Var || base.bound >= 0) {
        diags.push_back({Severity::Error, e.loc, "only array and stream variables can be indexed"});
      } else if (base.slot >= 0) {
        const auto kind = schema[static_cast<std::size_t>(base.slot)].kind;
        if (kind != VarKind::Array && kind != VarKind::Stream && kind != VarKind::Text)
          diags.push_back({Severity::Error, e.loc, "'" + base.name + "' is not an array or stream"});
      }
      for (std::size_t i = 1; i < e.args.size(); ++i) resolve(e.args[i], schema, diags, scope);
      return;
    }
    case Expr::Kind::Forall:
    case Expr::Kind::Exists:
      resolve(e.args[0], schema, diags, scope);
      resolve(e.args[1], schema, diags, scope);
      scope->push_back(e.name);
      resolve(e.args[2], schema, diags, scope);
      scope->pop_back();
      return;
    default:
      for (auto& a : e.args) resolve(a, schema, diags, scope);
      return;
  }
}

namespace {

int require_slot(const Schema& schema, const std::string& name, std::initializer_list<VarKind> kinds,
                 const std::string& role, SourceLoc loc, Diagnostics& diags) {
  auto slot = schema.slot_of(name);
  if (!slot) {
    diags.push_back({Severity::Error, loc, role + " needs a declared variable '" + name + "'"});
    return -1;
  }
  const auto kind = schema[*slot].kind;
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
    diags.push_back({Severity::Error, loc,
                     role + ": variable '" + name + "' has type " + kind_name(kind)});
    return -1;
  }
  return static_cast<int>(*slot);
}

}  // namespace

void resolve(RelationExpr& r, const Schema& schema, Diagnostics& diags) {
  switch (r.kind) {
    case RelationExpr::Kind::Guard:
      resolve(r.guard, schema, diags);
      if (contains_quantifier(r.guard))
        diags.push_back({Severity::Error, r.guard.loc, "quantifiers are only allowed in conditions"});
      return;
    case RelationExpr::Kind::Assign:
      for (auto& a : r.assigns) {
        auto slot = schema.slot_of(a.target);
        if (!slot) {
          diags.push_back({Severity::Error, a.loc, "undeclared variable '" + a.target + "'"});
        } else {
          a.slot = static_cast<int>(*slot);
          const auto kind = schema[*slot].kind;
          a.kind = kind;
          if (a.index && kind != VarKind::Array)
            diags.push_back({Severity::Error, a.loc, "'" + a.target + "' is not an array"});
          if (!a.index && kind != VarKind::Int && kind != VarKind::Bool && kind != VarKind::Sym)
            diags.push_back({Severity::Error, a.loc,
                             "cannot assign to " + std::string(kind_name(kind)) + " variable '" +
                                 a.target + "'"});
        }
        if (a.index) resolve(*a.index, schema, diags);
        resolve(a.value, schema, diags);
        if (contains_quantifier(a.value) || (a.index && contains_quantifier(*a.index)))
          diags.push_back({Severity::Error, a.loc, "quantifiers are only allowed in conditions"});
      }
      return;
    case RelationExpr::Kind::Builtin: {
      auto& b = r.builtin;
      const std::string role = builtin_name(b.kind);
      const auto streams = {VarKind::Stream, VarKind::Text};
      switch (b.kind) {
        case BuiltinKind::GetL:
        case BuiltinKind::GetR:
          b.var_slot = require_slot(schema, b.var, {VarKind::Int, VarKind::Sym}, role, b.loc, diags);
          if (b.var_slot >= 0) b.var_kind = schema[static_cast<std::size_t>(b.var_slot)].kind;
          [[fallthrough]];
        case BuiltinKind::NGetL:
        case BuiltinKind::NGetR: {
          const bool left = b.kind == BuiltinKind::GetL || b.kind == BuiltinKind::NGetL;
          b.stream_slot = require_slot(schema, left ? "left" : "right", streams, role, b.loc, diags);
          break;
        }
        case BuiltinKind::PutL:
        case BuiltinKind::PutR:
          b.stream_slot = require_slot(schema, b.kind == BuiltinKind::PutL ? "left" : "right",
                                       streams, role, b.loc, diags);
          b.out_slot = require_slot(schema, "out", streams, role, b.loc, diags);
          break;
        case BuiltinKind::Rd:
        case BuiltinKind::Wr:
        case BuiltinKind::Dir: {
          int found = -1;
          int count = 0;
          for (std::size_t i = 0; i < schema.size(); ++i) {
            if (schema[i].kind == VarKind::Tape) {
              found = static_cast<int>(i);
              ++count;
            }
          }
          if (count != 1)
            diags.push_back({Severity::Error, b.loc, role + " needs exactly one tape variable"});
          b.tape_slot = count == 1 ? found : -1;
          break;
        }
      }
      return;
    }
    case RelationExpr::Kind::Seq:
    case RelationExpr::Kind::Union:
      for (auto& p : r.parts) resolve(p, schema, diags);
      return;
  }
}

std::set<std::string> variables_of(const RelationExpr& r) {
  std::set<std::string> out;
  auto add_expr = [&](const Expr& e) {
    for_each_var(e, [&](const Expr& v) { out.insert(v.name); });
  };
  switch (r.kind) {
    case RelationExpr::Kind::Guard:
      add_expr(r.guard);
      break;
    case RelationExpr::Kind::Assign:
      for (const auto& a : r.assigns) {
        out.insert(a.target);
        if (a.index) add_expr(*a.index);
        add_expr(a.value);
      }
      break;
    case RelationExpr::Kind::Builtin:
      if (!r.builtin.var.empty()) out.insert(r.builtin.var);
      break;
    default:
      for (const auto& p : r.parts) {
        auto sub = variables_of(p);
        out.insert(sub.begin(), sub.end());
      }
  }
  return out;
}

}  // namespace mxc
