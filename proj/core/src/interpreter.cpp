#include "matrixcode/interpreter.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace mxc {

const char* status_name(Outcome::Status s) {
  switch (s) {
    case Outcome::Status::Success: return "success";
    case Outcome::Status::Failure: return "failure";
    case Outcome::Status::StepLimit: return "step-limit";
  }
  return "?";
}

RunError::RunError(const EvalError& cause, std::string control, Trace partial)
    : std::runtime_error("in state " + control + ": " + cause.what()),
      control_(std::move(control)),
      partial_(std::move(partial)) {}

std::vector<Configuration> step(const CodeMatrix& m, const Configuration& c, Policy policy,
                                CallCounter* counter) {
  std::vector<Configuration> out;
  const std::string& from = m.states.at(c.control);
  for (const Cell* cell : m.cells_from(from)) {
    const auto to = m.state_index(cell->to);
    if (!to) continue;
    for (const auto& rule : cell->rules) {
      auto img = image(rule, c.data, counter);
      if (img.empty()) continue;
      if (policy == Policy::Deterministic) {
        if (img.size() > 1)
          throw EvalError(rule.loc, "rule from " + from + " to " + cell->to +
                                        " has " + std::to_string(img.size()) +
                                        " successors under the deterministic policy");
        out.push_back({*to, std::move(img.front())});
        return out;
      }
      for (auto& d : img) out.push_back({*to, std::move(d)});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void note_entry(Trace& t, const CodeMatrix& m, Configuration c) {
  ++t.revisits[m.states[c.control]];
  t.configs.push_back(std::move(c));
}

}  // namespace

Outcome run(const CodeMatrix& m, const DataState& d0, Policy policy, std::uint64_t step_bound) {
  const auto start = m.state_index(m.start);
  const auto halt = m.state_index(m.halt);
  if (!start || !halt) throw std::invalid_argument("matrix has no valid start/halt state");

  Outcome out;
  CallCounter counter;
  note_entry(out.trace, m, {*start, d0});
  std::uint64_t transitions = 0;
  while (true) {
    const Configuration& cur = out.trace.configs.back();
    if (cur.control == *halt) {
      out.status = Outcome::Status::Success;
      break;
    }
    counter.begin_step();
    std::vector<Configuration> next;
    try {
      next = step(m, cur, policy, &counter);
    } catch (const EvalError& e) {
      out.trace.counters = counter.counts();
      throw RunError(e, m.states[cur.control], out.trace);
    }
    if (next.empty()) {
      out.status = Outcome::Status::Failure;
      break;
    }
    if (next.size() > 1) {
      out.trace.counters = counter.counts();
      throw RunError(EvalError({}, "nondeterministic step with " + std::to_string(next.size()) +
                                       " successors; use enumerate"),
                     m.states[cur.control], out.trace);
    }
    if (transitions == step_bound) {
      out.status = Outcome::Status::StepLimit;
      break;
    }
    note_entry(out.trace, m, std::move(next.front()));
    ++transitions;
  }
  out.trace.counters = counter.counts();
  return out;
}

std::vector<Outcome> enumerate(const CodeMatrix& m, const DataState& d0, std::size_t depth_bound) {
  const auto start = m.state_index(m.start);
  const auto halt = m.state_index(m.halt);
  if (!start || !halt) throw std::invalid_argument("matrix has no valid start/halt state");

  struct Node {
    Configuration config;
    std::size_t parent;
    std::size_t depth;
  };
  constexpr auto kRoot = static_cast<std::size_t>(-1);
  std::vector<Node> nodes;
  std::set<Configuration> seen;
  std::deque<std::size_t> frontier;

  nodes.push_back({{*start, d0}, kRoot, 0});
  seen.insert(nodes.back().config);
  frontier.push_back(0);

  auto path_to = [&](std::size_t idx) {
    std::vector<std::size_t> chain;
    for (auto i = idx; i != kRoot; i = nodes[i].parent) chain.push_back(i);
    Trace t;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) note_entry(t, m, nodes[*it].config);
    return t;
  };

  std::vector<Outcome> out;
  while (!frontier.empty()) {
    const auto idx = frontier.front();
    frontier.pop_front();
    const Configuration cur = nodes[idx].config;
    if (cur.control == *halt) {
      out.push_back({Outcome::Status::Success, path_to(idx)});
      continue;
    }
    std::vector<Configuration> next;
    try {
      next = step(m, cur, Policy::All);
    } catch (const EvalError& e) {
      throw RunError(e, m.states[cur.control], path_to(idx));
    }
    if (next.empty()) {
      out.push_back({Outcome::Status::Failure, path_to(idx)});
      continue;
    }
    if (nodes[idx].depth >= depth_bound) {
      out.push_back({Outcome::Status::StepLimit, path_to(idx)});
      continue;
    }
    for (auto& n : next) {
      if (!seen.insert(n).second) continue;
      nodes.push_back({std::move(n), idx, nodes[idx].depth + 1});
      frontier.push_back(nodes.size() - 1);
    }
  }
  return out;
}

std::map<std::string, std::int64_t> count_calls(const Trace& t) { return t.counters; }

std::vector<std::size_t> constant_slots(const CodeMatrix& m) {
  std::set<std::string> written;
  std::function<void(const RelationExpr&)> visit = [&](const RelationExpr& r) {
    switch (r.kind) {
      case RelationExpr::Kind::Assign:
        for (const auto& a : r.assigns) written.insert(a.target);
        break;
      case RelationExpr::Kind::Builtin:
        if (!r.builtin.var.empty()) written.insert(r.builtin.var);
        break;
      case RelationExpr::Kind::Seq:
      case RelationExpr::Kind::Union:
        for (const auto& p : r.parts) visit(p);
        break;
      default:
        break;
    }
  };
  for (const auto& c : m.cells)
    for (const auto& r : c.rules) visit(r);

  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.schema.size(); ++i) {
    const auto& v = m.schema[i];
    const bool scalar = v.kind == VarKind::Int || v.kind == VarKind::Bool || v.kind == VarKind::Sym;
    if (scalar && !written.count(v.name)) out.push_back(i);
  }
  return out;
}

std::string format_trace(const CodeMatrix& m, const Trace& t) {
  const auto constants = constant_slots(m);
  std::vector<std::size_t> columns;
  for (std::size_t i = 0; i < m.schema.size(); ++i)
    if (std::find(constants.begin(), constants.end(), i) == constants.end()) columns.push_back(i);

  std::vector<std::size_t> widths;
  for (auto slot : columns) {
    std::size_t w = m.schema[slot].name.size();
    for (const auto& c : t.configs)
      w = std::max(w, format_value(c.data[slot], m.schema[slot].kind).size());
    widths.push_back(std::max<std::size_t>(w + 1, 6));
  }

  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };

  std::ostringstream os;
  std::string header = "control | data";
  if (!constants.empty() && !t.configs.empty()) {
    std::string consts;
    for (auto slot : constants) {
      if (!consts.empty()) consts += ", ";
      consts += m.schema[slot].name + " = " +
                format_value(t.configs.front().data[slot], m.schema[slot].kind);
    }
    header = pad(header, 41) + consts;
  }
  os << header << "\nstate   | state\n";

  std::string names = "        | ";
  for (std::size_t i = 0; i < columns.size(); ++i)
    names += i + 1 == columns.size() ? m.schema[columns[i]].name : pad(m.schema[columns[i]].name, widths[i]);
  os << names << '\n';

  std::vector<std::string> rows;
  std::size_t widest = names.size();
  for (const auto& c : t.configs) {
    std::string label = m.states[c.control];
    std::string row = label.size() < 6 ? std::string(6 - label.size(), ' ') + label : label;
    row += "  | ";
    for (std::size_t i = 0; i < columns.size(); ++i) {
      auto cell = format_value(c.data[columns[i]], m.schema[columns[i]].kind);
      row += i + 1 == columns.size() ? cell : pad(cell, widths[i]);
    }
    widest = std::max(widest, row.size());
    rows.push_back(std::move(row));
  }
  os << std::string(std::max<std::size_t>(widest, 35), '-') << '\n';
  for (const auto& r : rows) os << r << '\n';
  return os.str();
}

}  // namespace mxc
