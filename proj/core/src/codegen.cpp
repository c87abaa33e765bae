#include "matrixcode/codegen.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "matrixcode/verifier.hpp"

namespace mxc {

namespace {

struct Rule {
  const RelationExpr* rel = nullptr;
  std::string target;
  std::size_t number = 0;  // 1-based position within the column
  std::vector<const RelationExpr*> tests;
  std::vector<const RelationExpr*> actions;
};

bool is_trivial_guard(const RelationExpr& r) {
  return r.kind == RelationExpr::Kind::Guard && r.guard.kind == Expr::Kind::Bool && r.guard.value != 0;
}

/// Splits a rule into its tests and actions; returns a problem description
/// when the rule has no such shape.
std::optional<std::string> split(Rule& rule) {
  for (const RelationExpr* item : seq_items(*rule.rel)) {
    bool test = false;
    switch (item->kind) {
      case RelationExpr::Kind::Guard:
        if (is_trivial_guard(*item)) continue;
        test = true;
        break;
      case RelationExpr::Kind::Builtin: test = is_test(item->builtin.kind); break;
      case RelationExpr::Kind::Assign: test = false; break;
      default: return "contains a nested alternative";
    }
    if (test && !rule.actions.empty()) return "tests after an action";
    (test ? rule.tests : rule.actions).push_back(item);
  }
  return std::nullopt;
}

std::vector<Rule> column_rules(const CodeMatrix& m, const std::string& k) {
  std::vector<Rule> out;
  for (const Cell* c : m.cells_from(k))
    for (const auto& r : c->rules) {
      Rule rule;
      rule.rel = &r;
      rule.target = c->to;
      rule.number = out.size() + 1;
      out.push_back(std::move(rule));
    }
  return out;
}

bool complementary_ops(Op a, Op b) {
  auto pair = [&](Op x, Op y) { return (a == x && b == y) || (a == y && b == x); };
  return pair(Op::Lt, Op::Ge) || pair(Op::Le, Op::Gt) || pair(Op::Eq, Op::Ne);
}

/// t2 is exactly the negation of t1.
bool complement(const RelationExpr& t1, const RelationExpr& t2) {
  if (t1.kind == RelationExpr::Kind::Guard && t2.kind == RelationExpr::Kind::Guard) {
    const Expr& a = t1.guard;
    const Expr& b = t2.guard;
    if (a.kind == Expr::Kind::Unary && a.op == Op::Not && a.args[0] == b) return true;
    if (b.kind == Expr::Kind::Unary && b.op == Op::Not && b.args[0] == a) return true;
    return a.kind == Expr::Kind::Binary && b.kind == Expr::Kind::Binary && complementary_ops(a.op, b.op) &&
           a.args[0] == b.args[0] && a.args[1] == b.args[1];
  }
  if (t1.kind == RelationExpr::Kind::Builtin && t2.kind == RelationExpr::Kind::Builtin) {
    auto k1 = t1.builtin.kind, k2 = t2.builtin.kind;
    auto pair = [&](BuiltinKind x, BuiltinKind y) { return (k1 == x && k2 == y) || (k1 == y && k2 == x); };
    return pair(BuiltinKind::GetL, BuiltinKind::NGetL) || pair(BuiltinKind::GetR, BuiltinKind::NGetR);
  }
  return false;
}

bool disjoint_tests(const RelationExpr& t1, const RelationExpr& t2) {
  if (complement(t1, t2)) return true;
  return t1.kind == RelationExpr::Kind::Builtin && t2.kind == RelationExpr::Kind::Builtin &&
         t1.builtin.kind == BuiltinKind::Rd && t2.builtin.kind == BuiltinKind::Rd &&
         t1.builtin.symbol != t2.builtin.symbol;
}

bool syntactically_exclusive(const Rule& a, const Rule& b) {
  for (const auto* x : a.tests)
    for (const auto* y : b.tests)
      if (disjoint_tests(*x, *y)) return true;
  return false;
}

RelationExpr test_prefix(const Rule& r) {
  if (r.tests.empty()) return RelationExpr::make_guard(Expr::boolean(true));
  RelationExpr out = *r.tests.front();
  for (std::size_t i = 1; i < r.tests.size(); ++i) out = RelationExpr::seq(std::move(out), *r.tests[i]);
  return out;
}

/// Searches a small domain for a state on which both rules' tests pass.
/// Returns the witness, an empty string when none exists, or nullopt when
/// the tests involve data that cannot be enumerated.
std::optional<std::string> overlap(const CodeMatrix& m, const Rule& a, const Rule& b) {
  const RelationExpr pa = test_prefix(a), pb = test_prefix(b);
  std::set<std::string> names = variables_of(pa);
  for (auto v : variables_of(pb)) names.insert(v);
  for (const auto* r : {&pa, &pb})
    for (const auto* item : seq_items(*r)) {
      if (item->kind != RelationExpr::Kind::Builtin) continue;
      switch (item->builtin.kind) {
        case BuiltinKind::GetL:
        case BuiltinKind::NGetL: names.insert("left"); break;
        case BuiltinKind::GetR:
        case BuiltinKind::NGetR: names.insert("right"); break;
        default: return std::nullopt;  // tape contents are not enumerated
      }
    }

  DomainSpec dom;
  std::vector<std::size_t> shown;
  for (const auto& name : names) {
    auto slot = m.schema.slot_of(name);
    if (!slot) return std::nullopt;
    VarDomain vd;
    vd.name = name;
    switch (m.schema[*slot].kind) {
      case VarKind::Int: vd.lo = -4, vd.hi = 4; break;
      case VarKind::Sym: vd.lo = 0, vd.hi = 4; break;
      case VarKind::Bool: vd.lo = 0, vd.hi = 1; break;
      case VarKind::Stream:
      case VarKind::Text:
        vd.kind = VarDomain::Kind::Stream;
        vd.len_lo = 0, vd.len_hi = 2, vd.lo = 0, vd.hi = 2;
        break;
      default: return std::nullopt;
    }
    dom.vars.push_back(vd);
    shown.push_back(*slot);
  }
  std::sort(shown.begin(), shown.end());

  std::string witness;
  try {
    for_each_state(m.schema, dom, [&](const DataState& d) {
      try {
        if (image(pa, d).empty() || image(pb, d).empty()) return true;
      } catch (const EvalError&) {
        return true;
      }
      for (auto slot : shown) {
        if (!witness.empty()) witness += ", ";
        witness += m.schema[slot].name + "=" + format_value(d[slot], m.schema[slot].kind);
      }
      return false;
    });
  } catch (const EvalError&) {
    return std::nullopt;
  }
  return witness;
}

bool uses_len(const Expr& e) {
  if (e.kind == Expr::Kind::Len) return true;
  return std::any_of(e.args.begin(), e.args.end(), uses_len);
}

bool rule_uses_len(const RelationExpr& r) {
  switch (r.kind) {
    case RelationExpr::Kind::Guard: return uses_len(r.guard);
    case RelationExpr::Kind::Assign:
      return std::any_of(r.assigns.begin(), r.assigns.end(), [](const Assignment& a) {
        return uses_len(a.value) || (a.index && uses_len(*a.index));
      });
    case RelationExpr::Kind::Builtin: return false;
    default: return std::any_of(r.parts.begin(), r.parts.end(), rule_uses_len);
  }
}

const std::set<std::string>& reserved_names() {
  static const std::set<std::string> names = {
      "auto",   "bool",   "break",  "case",   "char",     "const",  "continue", "default", "do",
      "double", "else",   "enum",   "extern", "false",    "float",  "for",      "goto",    "if",
      "inline", "int",    "long",   "register", "restrict", "return", "short",  "signed",  "sizeof",
      "static", "struct", "switch", "true",   "typedef",  "union",  "unsigned", "void",    "volatile",
      "while",  "io",     "tape",   "state",  "int64_t",  "NULL"};
  return names;
}

}  // namespace

TranslatabilityReport check_translatable(const CodeMatrix& m) {
  TranslatabilityReport rep;
  for (const auto& v : m.schema.vars()) {
    if (reserved_names().count(v.name) ||
        std::find(m.states.begin(), m.states.end(), v.name) != m.states.end())
      rep.findings.push_back({"", "variable name '" + v.name + "' clashes with a name in the emitted code", {}});
  }
  for (const auto& k : m.states) {
    if (reserved_names().count(k))
      rep.findings.push_back({k, "control state name '" + k + "' clashes with a name in the emitted code", {}});
  }

  std::vector<std::string> sorted_states = m.states;
  std::sort(sorted_states.begin(), sorted_states.end());
  for (const auto& k : sorted_states) {
    auto rules = column_rules(m, k);
    bool shaped = true;
    for (auto& r : rules) {
      if (auto problem = split(r)) {
        rep.findings.push_back({k, "rule " + std::to_string(r.number) + " " + *problem, {}});
        shaped = false;
      }
      if (rule_uses_len(*r.rel))
        rep.findings.push_back({k, "rule " + std::to_string(r.number) + " uses len(), which has no C form", {}});
    }
    if (!shaped) continue;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      for (std::size_t j = i + 1; j < rules.size(); ++j) {
        if (syntactically_exclusive(rules[i], rules[j])) continue;
        const std::string which = "rules " + std::to_string(rules[i].number) + " and " +
                                  std::to_string(rules[j].number);
        auto w = overlap(m, rules[i], rules[j]);
        if (!w) {
          rep.findings.push_back({k, which + " are not shown to be exclusive", {}});
        } else if (!w->empty()) {
          rep.findings.push_back({k, which + " overlap", *w});
        }
      }
    }
  }
  return rep;
}

std::string format_findings(const TranslatabilityReport& r) {
  std::ostringstream os;
  if (r.translatable()) {
    os << "translatable\n";
    return os.str();
  }
  for (const auto& f : r.findings) {
    os << (f.column.empty() ? "matrix" : "column " + f.column) << ": " << f.message;
    if (f.witness) os << ", e.g. at " << *f.witness;
    os << '\n';
  }
  return os.str();
}

CodegenError::CodegenError(const TranslatabilityReport& r)
    : std::runtime_error("matrix is not translatable:\n" + format_findings(r)), report_(r) {}

namespace {

std::string c_char(char c) {
  switch (c) {
    case '\'': return "'\\''";
    case '\\': return "'\\\\'";
    case '\n': return "'\\n'";
    default: return std::string("'") + c + "'";
  }
}

class Emitter {
 public:
  explicit Emitter(const CodeMatrix& m) : m_(m) {}

  std::string run(const std::string& name) {
    line(0, "/* Generated from code matrix " + m_.name + ". */");
    line(0, "#include <stdbool.h>");
    line(0, "#include <stdint.h>");
    line(0, std::string("#include \"") + kRuntimeHeader + "\"");
    line(0, "");
    line(0, "void " + name + "(" + parameters() + ") {");
    locals();
    std::string states;
    for (const auto& k : m_.states) states += (states.empty() ? "" : ", ") + k;
    line(1, "enum { " + states + " } state = " + m_.start + ";");
    line(0, "");
    line(1, "for (;;) {");
    line(2, "switch (state) {");
    std::vector<std::string> order = m_.states;
    std::sort(order.begin(), order.end());
    for (const auto& k : order) column(k);
    line(2, "}");
    line(1, "}");
    line(0, "}");
    return out_.str();
  }

 private:
  void line(int depth, const std::string& text) {
    if (!text.empty()) out_ << std::string(static_cast<std::size_t>(depth) * 2, ' ') << text;
    out_ << '\n';
  }

  static std::string scalar_type(VarKind k) { return k == VarKind::Bool ? "bool" : "int64_t"; }

  std::string parameters() const {
    std::vector<std::string> ps;
    bool io = false, tape = false;
    for (const auto& v : m_.schema.vars()) {
      switch (v.kind) {
        case VarKind::Stream:
        case VarKind::Text:
          if (!io) ps.push_back("mc_trinity *io");
          io = true;
          break;
        case VarKind::Tape:
          if (!tape) ps.push_back("mc_tape *tape");
          tape = true;
          break;
        case VarKind::Array:
          if (v.param) ps.push_back("int64_t " + v.name + "[]");
          break;
        default:
          if (v.param) ps.push_back(scalar_type(v.kind) + " " + v.name);
          break;
      }
    }
    if (ps.empty()) return "void";
    std::string s;
    for (const auto& p : ps) s += (s.empty() ? "" : ", ") + p;
    return s;
  }

  void locals() {
    std::vector<std::string> ints, bools;
    for (const auto& v : m_.schema.vars()) {
      if (v.param) continue;
      if (v.kind == VarKind::Int || v.kind == VarKind::Sym) ints.push_back(v.name);
      if (v.kind == VarKind::Bool) bools.push_back(v.name);
      if (v.kind == VarKind::Array)
        line(1, "int64_t " + v.name + "[" + (v.length ? to_source(*v.length) : std::string()) + "];");
    }
    auto join = [](const std::vector<std::string>& xs) {
      std::string s;
      for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
      return s;
    };
    if (!ints.empty()) line(1, "int64_t " + join(ints) + ";");
    if (!bools.empty()) line(1, "bool " + join(bools) + ";");
  }

  static std::string stream_call(BuiltinKind k, const std::string& bind) {
    const bool left = k == BuiltinKind::GetL || k == BuiltinKind::NGetL;
    return std::string(left ? "mc_getL" : "mc_getR") + "(io, " + bind + ")";
  }

  /// C condition for one test. `partner` is the complementary getX of an
  /// ngetX test, whose variable the call binds as a side effect.
  static std::string test_text(const RelationExpr& t, bool several, const RelationExpr* partner = nullptr) {
    if (t.kind == RelationExpr::Kind::Guard) {
      std::string s = to_source(t.guard);
      const bool loose = t.guard.kind == Expr::Kind::Binary && op_precedence(t.guard.op) < op_precedence(Op::And);
      return several && loose ? "(" + s + ")" : s;
    }
    const auto& b = t.builtin;
    switch (b.kind) {
      case BuiltinKind::GetL:
      case BuiltinKind::GetR: return stream_call(b.kind, "&" + b.var);
      case BuiltinKind::NGetL:
      case BuiltinKind::NGetR:
        return "!" + stream_call(b.kind, partner ? "&" + partner->builtin.var : std::string("NULL"));
      case BuiltinKind::Rd: return "mc_rd(tape) == " + c_char(b.symbol);
      default: return "?";
    }
  }

  static std::string condition(const std::vector<const RelationExpr*>& tests, std::size_t from = 0,
                               const RelationExpr* partner = nullptr) {
    std::string s;
    const bool several = tests.size() - from > 1;
    for (std::size_t i = from; i < tests.size(); ++i)
      s += (s.empty() ? "" : " && ") + test_text(*tests[i], several, i == from ? partner : nullptr);
    return s;
  }

  void body(int depth, const Rule& r) {
    for (const auto* a : r.actions) {
      if (a->kind == RelationExpr::Kind::Assign) {
        for (const auto& as : a->assigns)
          line(depth, as.target + (as.index ? "[" + to_source(*as.index) + "]" : "") + " = " +
                          to_source(as.value) + ";");
        continue;
      }
      const auto& b = a->builtin;
      switch (b.kind) {
        case BuiltinKind::PutL: line(depth, "mc_putL(io);"); break;
        case BuiltinKind::PutR: line(depth, "mc_putR(io);"); break;
        case BuiltinKind::Wr: line(depth, "mc_wr(tape, " + c_char(b.symbol) + ");"); break;
        case BuiltinKind::Dir: line(depth, std::string("mc_dir(tape, '") + static_cast<char>(b.dir) + "');"); break;
        default: break;
      }
    }
    line(depth, "state = " + r.target + ";");
  }

  void column(const std::string& k) {
    line(2, "case " + k + ":");
    if (k == m_.halt) {
      line(3, "return;");
      return;
    }
    auto rules = column_rules(m_, k);
    for (auto& r : rules) split(r);

    if (rules.empty()) {
      line(3, "mc_fail();");
    } else if (rules.size() == 1 && rules[0].tests.empty()) {
      body(3, rules[0]);
    } else if (rules.size() == 2 && !rules[0].tests.empty() && !rules[1].tests.empty() &&
               complement(*rules[0].tests[0], *rules[1].tests[0])) {
      const RelationExpr* first = rules[0].tests[0];
      const RelationExpr* second = rules[1].tests[0];
      const bool bind_partner = first->kind == RelationExpr::Kind::Builtin &&
                                (first->builtin.kind == BuiltinKind::NGetL || first->builtin.kind == BuiltinKind::NGetR);
      line(3, "if (" + condition(rules[0].tests, 0, bind_partner ? second : nullptr) + ") {");
      body(4, rules[0]);
      line(3, "} else {");
      if (rules[1].tests.size() > 1) {
        line(4, "if (" + condition(rules[1].tests, 1) + ") {");
        body(5, rules[1]);
        line(4, "} else {");
        line(5, "mc_fail();");
        line(4, "}");
      } else {
        body(4, rules[1]);
      }
      line(3, "}");
    } else {
      for (std::size_t i = 0; i < rules.size(); ++i) {
        const auto& r = rules[i];
        if (r.tests.empty()) {
          line(3, i == 0 ? "{" : "} else {");
          body(4, r);
          line(3, "}");
          line(3, "break;");
          return;
        }
        line(3, std::string(i == 0 ? "if (" : "} else if (") + condition(r.tests) + ") {");
        body(4, r);
      }
      line(3, "} else {");
      line(4, "mc_fail();");
      line(3, "}");
    }
    line(3, "break;");
  }

  const CodeMatrix& m_;
  std::ostringstream out_;
};

}  // namespace

std::string emit(const CodeMatrix& m, const std::string& function_name, Profile profile) {
  (void)profile;  // C99 is the only profile
  auto rep = check_translatable(m);
  if (!rep.translatable()) throw CodegenError(rep);
  return Emitter(m).run(function_name);
}

}  // namespace mxc
