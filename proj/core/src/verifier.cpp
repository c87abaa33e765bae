#include "matrixcode/verifier.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace mxc {

bool operator==(const Condition& a, const Condition& b) {
  return a.state == b.state && a.label == b.label && a.expr == b.expr;
}

const Condition* ConditionVector::find(const std::string& state) const {
  auto it = entries.find(state);
  return it == entries.end() ? nullptr : &it->second;
}

ConditionVector ConditionVector::trivial(const std::vector<std::string>& states) {
  ConditionVector v;
  for (const auto& k : states) v.entries[k] = Condition{k, "true", Expr::boolean(true), {}};
  return v;
}

bool operator==(const ConditionVector& a, const ConditionVector& b) { return a.entries == b.entries; }

std::vector<std::string> missing_conditions(const ConditionVector& v, const CodeMatrix& m) {
  std::vector<std::string> out;
  for (const auto& k : m.states)
    if (!v.find(k)) out.push_back(k);
  return out;
}

bool operator==(const VarDomain& a, const VarDomain& b) {
  return a.name == b.name && a.kind == b.kind && a.lo == b.lo && a.hi == b.hi &&
         a.allow_unset == b.allow_unset && a.len_lo == b.len_lo && a.len_hi == b.len_hi &&
         a.sorted == b.sorted && a.fixed == b.fixed;
}

const VarDomain* DomainSpec::find(const std::string& name) const {
  for (const auto& v : vars)
    if (v.name == name) return &v;
  return nullptr;
}

void DomainSpec::set(VarDomain d) {
  for (auto& v : vars) {
    if (v.name == d.name) {
      v = std::move(d);
      return;
    }
  }
  vars.push_back(std::move(d));
}

bool operator==(const DomainSpec& a, const DomainSpec& b) { return a.vars == b.vars; }

namespace {

bool is_scalar(VarKind k) { return k == VarKind::Int || k == VarKind::Bool || k == VarKind::Sym; }

Value scalar_value(VarKind kind, std::int64_t x, const VarDecl& decl, SourceLoc loc) {
  if (kind == VarKind::Bool) return x != 0;
  return coerce_to(kind, Value{x}, decl.name, loc);
}

void streams_of(std::int64_t len, std::int64_t lo, std::int64_t hi, bool sorted,
                std::deque<std::int64_t>& cur, std::vector<Value>& out) {
  if (static_cast<std::int64_t>(cur.size()) == len) {
    out.emplace_back(Stream{cur});
    return;
  }
  const std::int64_t from = sorted && !cur.empty() ? std::max(lo, cur.back()) : lo;
  for (std::int64_t x = from; x <= hi; ++x) {
    cur.push_back(x);
    streams_of(len, lo, hi, sorted, cur, out);
    cur.pop_back();
  }
}

std::int64_t array_length(const VarDecl& decl, const DataState& partial) {
  if (!decl.length) throw EvalError(decl.loc, "array '" + decl.name + "' has no declared length");
  const Value n = eval_expr(partial, *decl.length);
  const auto* len = std::get_if<std::int64_t>(&n);
  if (!len || *len < 0) throw EvalError(decl.loc, "array '" + decl.name + "' has an invalid length");
  return *len;
}

/// Every value `slot` may take given the already chosen scalars in `partial`.
std::vector<Value> choices(const Schema& schema, std::size_t slot, const DomainSpec& dom,
                           const DataState& partial) {
  const VarDecl& decl = schema[slot];
  const VarDomain* vd = dom.find(decl.name);
  std::vector<Value> out;

  if (!vd) {
    switch (decl.kind) {
      case VarKind::Array: {
        IntArray a;
        a.items.resize(static_cast<std::size_t>(array_length(decl, partial)));
        out.emplace_back(std::move(a));
        break;
      }
      case VarKind::Stream:
      case VarKind::Text: out.emplace_back(Stream{}); break;
      case VarKind::Tape: out.emplace_back(Tape{}); break;
      default: out.emplace_back(Unset{}); break;
    }
    return out;
  }

  switch (vd->kind) {
    case VarDomain::Kind::Fixed:
      out.push_back(coerce_to(decl.kind, *vd->fixed, decl.name, vd->loc));
      break;
    case VarDomain::Kind::Range:
      if (!is_scalar(decl.kind))
        throw EvalError(vd->loc, "range domain given for non-scalar '" + decl.name + "'");
      if (vd->allow_unset) out.emplace_back(Unset{});
      for (std::int64_t x = vd->lo; x <= vd->hi; ++x)
        out.push_back(scalar_value(decl.kind, x, decl, vd->loc));
      break;
    case VarDomain::Kind::Elements: {
      if (decl.kind != VarKind::Array)
        throw EvalError(vd->loc, "element domain given for non-array '" + decl.name + "'");
      const auto len = static_cast<std::size_t>(array_length(decl, partial));
      std::vector<std::optional<std::int64_t>> alphabet;
      if (vd->allow_unset) alphabet.emplace_back(std::nullopt);
      for (std::int64_t x = vd->lo; x <= vd->hi; ++x) alphabet.emplace_back(x);
      if (alphabet.empty()) break;
      std::vector<std::size_t> digit(len, 0);
      while (true) {
        IntArray a;
        for (auto i : digit) a.items.push_back(alphabet[i]);
        out.emplace_back(std::move(a));
        std::size_t pos = 0;
        while (pos < len && ++digit[len - 1 - pos] == alphabet.size()) digit[len - 1 - pos++] = 0;
        if (pos == len) break;
      }
      break;
    }
    case VarDomain::Kind::Stream: {
      if (decl.kind != VarKind::Stream && decl.kind != VarKind::Text)
        throw EvalError(vd->loc, "stream domain given for non-stream '" + decl.name + "'");
      std::deque<std::int64_t> cur;
      for (std::int64_t len = vd->len_lo; len <= vd->len_hi; ++len)
        streams_of(len, vd->lo, vd->hi, vd->sorted, cur, out);
      break;
    }
  }
  return out;
}

}  // namespace

std::uint64_t for_each_state(const Schema& schema, const DomainSpec& dom,
                             const std::function<bool(const DataState&)>& visit) {
  for (const auto& vd : dom.vars)
    if (!schema.slot_of(vd.name))
      throw EvalError(vd.loc, "domain names undeclared variable '" + vd.name + "'");

  // Scalars first: array lengths may depend on them.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < schema.size(); ++i)
    if (is_scalar(schema[i].kind)) order.push_back(i);
  for (std::size_t i = 0; i < schema.size(); ++i)
    if (!is_scalar(schema[i].kind)) order.push_back(i);

  DataState d(schema.size());
  std::uint64_t visited = 0;
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (stop) return;
    if (idx == order.size()) {
      ++visited;
      if (!visit(d)) stop = true;
      return;
    }
    const std::size_t slot = order[idx];
    for (auto& v : choices(schema, slot, dom, d)) {
      d[slot] = std::move(v);
      rec(idx + 1);
      if (stop) return;
    }
    d[slot] = Unset{};
  };
  rec(0);
  return visited;
}

std::vector<DataState> enumerate_states(const Schema& schema, const DomainSpec& dom) {
  std::vector<DataState> out;
  for_each_state(schema, dom, [&](const DataState& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

TripleResult check_triple(const Expr& p, const RelationExpr& r, const Expr& q, const Schema& schema,
                          const DomainSpec& dom) {
  TripleResult res;
  for_each_state(schema, dom, [&](const DataState& d) {
    ++res.checked;
    try {
      if (!eval_condition(d, p)) return true;
    } catch (const EvalError& e) {
      res.verdict = TripleResult::Verdict::Error;
      res.before = d;
      res.message = std::string("precondition: ") + e.what();
      return false;
    }
    StateSet img;
    try {
      img = image(r, d);
    } catch (const EvalError& e) {
      res.verdict = TripleResult::Verdict::Error;
      res.before = d;
      res.message = std::string("relation: ") + e.what();
      return false;
    }
    for (const auto& after : img) {
      try {
        if (eval_condition(after, q)) continue;
        res.verdict = TripleResult::Verdict::Counterexample;
        res.message = "postcondition is false";
      } catch (const EvalError& e) {
        res.verdict = TripleResult::Verdict::Error;
        res.message = std::string("postcondition: ") + e.what();
      }
      res.before = d;
      res.after = after;
      return false;
    }
    return true;
  });
  return res;
}

bool VectorReport::holds() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellReport& c) { return c.result.holds(); });
}

VectorReport check_vector(const ConditionVector& v, const CodeMatrix& m, const DomainSpec& dom) {
  VectorReport rep;
  const auto missing = missing_conditions(v, m);
  if (!missing.empty()) throw std::invalid_argument("condition vector has no entry for '" + missing.front() + "'");

  // One pass over the domain: evaluate each column's precondition once and
  // check every cell of that column against it.
  struct Pending {
    std::size_t report;
    RelationExpr relation;
    const Expr* post;
    bool done = false;
  };
  std::map<std::string, std::vector<Pending>> columns;
  for (const auto& c : m.cells) {
    if (c.rules.empty()) continue;
    rep.cells.push_back({c.from, c.to, {}, {}});
    for (const auto& r : c.rules) {
      if (!rep.cells.back().relation.empty()) rep.cells.back().relation += " | ";
      rep.cells.back().relation += to_source(r);
    }
    columns[c.from].push_back({rep.cells.size() - 1, CodeMatrix::cell_relation(c), &v.find(c.to)->expr});
  }

  for_each_state(m.schema, dom, [&](const DataState& d) {
    bool any_open = false;
    for (auto& [from, cells] : columns) {
      bool open = false;
      for (const auto& p : cells) open = open || !p.done;
      if (!open) continue;
      any_open = true;

      bool pre = false;
      std::string pre_error;
      try {
        pre = eval_condition(d, v.find(from)->expr);
      } catch (const EvalError& e) {
        pre_error = e.what();
      }
      for (auto& p : cells) {
        if (p.done) continue;
        TripleResult& res = rep.cells[p.report].result;
        ++res.checked;
        if (!pre_error.empty()) {
          res.verdict = TripleResult::Verdict::Error;
          res.before = d;
          res.message = "precondition: " + pre_error;
          p.done = true;
          continue;
        }
        if (!pre) continue;
        StateSet img;
        try {
          img = image(p.relation, d);
        } catch (const EvalError& e) {
          res.verdict = TripleResult::Verdict::Error;
          res.before = d;
          res.message = std::string("relation: ") + e.what();
          p.done = true;
          continue;
        }
        for (const auto& after : img) {
          try {
            if (eval_condition(after, *p.post)) continue;
            res.verdict = TripleResult::Verdict::Counterexample;
            res.message = "postcondition is false";
          } catch (const EvalError& e) {
            res.verdict = TripleResult::Verdict::Error;
            res.message = std::string("postcondition: ") + e.what();
          }
          res.before = d;
          res.after = after;
          p.done = true;
          break;
        }
      }
    }
    return any_open;
  });
  return rep;
}

std::vector<Violation> monitor(const CodeMatrix& m, const ConditionVector& v, const Trace& t) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < t.configs.size(); ++i) {
    const auto& c = t.configs[i];
    const std::string& k = m.states.at(c.control);
    const Condition* cond = v.find(k);
    if (!cond) {
      out.push_back({i, k, c.data, "no condition for state " + k});
      continue;
    }
    try {
      if (!eval_condition(c.data, cond->expr)) out.push_back({i, k, c.data, "condition is false"});
    } catch (const EvalError& e) {
      out.push_back({i, k, c.data, std::string("condition raised an error: ") + e.what()});
    }
  }
  return out;
}

namespace {

constexpr std::size_t kMaxWitnesses = 3;

void add_witness(CompletenessReport& r, const std::string& k, const DataState& d, std::string note) {
  auto& list = r.columns[k];
  if (list.size() >= kMaxWitnesses) return;
  for (const auto& w : list)
    if (w.data == d) return;
  list.push_back({k, d, std::move(note)});
}

}  // namespace

bool CompletenessReport::complete() const {
  return std::all_of(columns.begin(), columns.end(), [](const auto& c) { return c.second.empty(); });
}

CompletenessReport completeness(const CodeMatrix& m, const ConditionVector& v, const DomainSpec& dom) {
  CompletenessReport rep;
  for_each_state(m.schema, dom, [&](const DataState& d) {
    ++rep.explored;
    for (const auto& k : m.states) {
      if (k == m.halt) continue;
      if (const Condition* cond = v.find(k)) {
        try {
          if (!eval_condition(d, cond->expr)) continue;
        } catch (const EvalError&) {
          continue;  // outside the condition's meaningful range
        }
      }
      bool enabled = false;
      try {
        for (const Cell* c : m.cells_from(k)) {
          for (const auto& r : c->rules) {
            if (!image(r, d).empty()) {
              enabled = true;
              break;
            }
          }
          if (enabled) break;
        }
      } catch (const EvalError& e) {
        add_witness(rep, k, d, std::string("evaluation error: ") + e.what());
        continue;
      }
      if (!enabled) add_witness(rep, k, d, "no transition applies");
    }
    return true;
  });
  return rep;
}

CompletenessReport completeness_from_samples(const CodeMatrix& m, const ConditionVector& v,
                                             const std::vector<DataState>& starts,
                                             std::size_t depth_bound) {
  CompletenessReport rep;
  for (const auto& d0 : starts) {
    std::vector<Outcome> outcomes;
    try {
      outcomes = enumerate(m, d0, depth_bound);
    } catch (const RunError& e) {
      const auto& last = e.partial().configs.back();
      add_witness(rep, m.states[last.control], last.data, e.what());
      continue;
    }
    for (const auto& o : outcomes) {
      ++rep.explored;
      if (o.status != Outcome::Status::Failure) continue;
      const auto& last = o.last();
      const std::string& k = m.states[last.control];
      if (const Condition* cond = v.find(k)) {
        try {
          if (!eval_condition(last.data, cond->expr)) continue;
        } catch (const EvalError&) {
          continue;
        }
      }
      add_witness(rep, k, last.data, "computation is stuck");
    }
  }
  return rep;
}

namespace {

const char* verdict_text(TripleResult::Verdict v) {
  switch (v) {
    case TripleResult::Verdict::Holds: return "holds";
    case TripleResult::Verdict::Counterexample: return "FAILS";
    case TripleResult::Verdict::Error: return "ERROR";
  }
  return "?";
}

}  // namespace

std::string format_vector_report(const CodeMatrix& m, const ConditionVector& v, const VectorReport& r) {
  std::ostringstream os;
  os << "conditions:\n";
  for (const auto& k : m.states) {
    const Condition* c = v.find(k);
    os << "  " << k << ": ";
    if (!c) {
      os << "(missing)\n";
      continue;
    }
    if (!c->label.empty()) os << '"' << c->label << "\" is ";
    os << to_source(c->expr) << '\n';
  }
  os << "triples:\n";
  std::size_t held = 0;
  for (const auto& c : r.cells) {
    os << "  {" << c.from << "} " << c.relation << " {" << c.to << "}  "
       << verdict_text(c.result.verdict) << '\n';
    if (c.result.holds()) {
      ++held;
      continue;
    }
    if (c.result.before) os << "    before: " << format_state(m.schema, *c.result.before) << '\n';
    if (c.result.after) os << "    after:  " << format_state(m.schema, *c.result.after) << '\n';
    os << "    " << c.result.message << '\n';
  }
  os << (r.holds() ? "vector holds" : "vector fails") << ": " << held << " of " << r.cells.size()
     << " cells hold\n";
  return os.str();
}

std::string format_completeness(const CodeMatrix& m, const CompletenessReport& r) {
  std::ostringstream os;
  os << "completeness:\n";
  bool any = false;
  for (const auto& k : m.states) {
    auto it = r.columns.find(k);
    if (it == r.columns.end() || it->second.empty()) continue;
    any = true;
    os << "  column " << k << " is incomplete:\n";
    for (const auto& w : it->second)
      os << "    " << format_state(m.schema, w.data) << "  (" << w.note << ")\n";
  }
  if (!any) os << "  no incomplete columns\n";
  return os.str();
}

}  // namespace mxc
