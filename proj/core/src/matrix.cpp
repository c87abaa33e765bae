#include "matrixcode/matrix.hpp"

#include <set>
#include <stdexcept>

namespace mxc {

bool operator==(const Cell& a, const Cell& b) {
  return a.from == b.from && a.to == b.to && a.rules == b.rules;
}

bool operator==(const CodeMatrix& a, const CodeMatrix& b) {
  return a.name == b.name && a.schema == b.schema && a.states == b.states && a.start == b.start &&
         a.halt == b.halt && a.cells == b.cells;
}

std::optional<std::size_t> CodeMatrix::state_index(const std::string& k) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == k) return i;
  return std::nullopt;
}

const Cell* CodeMatrix::find_cell(const std::string& from, const std::string& to) const {
  for (const auto& c : cells)
    if (c.from == from && c.to == to) return &c;
  return nullptr;
}

std::vector<const Cell*> CodeMatrix::cells_from(const std::string& from) const {
  std::vector<const Cell*> out;
  for (const auto& c : cells)
    if (c.from == from) out.push_back(&c);
  return out;
}

RelationExpr CodeMatrix::cell_relation(const Cell& c) {
  if (c.rules.empty()) throw std::invalid_argument("cell has no rules");
  RelationExpr r = c.rules.front();
  for (std::size_t i = 1; i < c.rules.size(); ++i) r = RelationExpr::alt(std::move(r), c.rules[i]);
  return r;
}

Diagnostics validate(const CodeMatrix& m) {
  Diagnostics out;
  auto error = [&](SourceLoc loc, std::string msg) {
    out.push_back({Severity::Error, loc, std::move(msg)});
  };

  std::set<std::string> seen;
  for (const auto& k : m.states)
    if (!seen.insert(k).second) error({}, "duplicate control state '" + k + "'");

  const bool has_start = m.state_index(m.start).has_value();
  const bool has_halt = m.state_index(m.halt).has_value();
  if (!has_start) error({}, "start state '" + m.start + "' is not a control state");
  if (!has_halt) error({}, "halt state '" + m.halt + "' is not a control state");
  if (has_start && m.start == m.halt) error({}, "start and halt must differ");

  std::set<std::string> declared;
  for (const auto& v : m.schema.vars()) declared.insert(v.name);

  for (const auto& c : m.cells) {
    const std::string where = "cell from " + c.from + " to " + c.to;
    if (!m.state_index(c.from)) error(c.loc, where + ": unknown control state '" + c.from + "'");
    if (!m.state_index(c.to)) error(c.loc, where + ": unknown control state '" + c.to + "'");
    if (c.to == m.start)
      error(c.loc, where + ": no transition may enter the start state (delta[k,S] must be empty)");
    if (c.from == m.halt)
      error(c.loc, where + ": no transition may leave the halt state (delta[H,k] must be empty)");
    for (const auto& r : c.rules)
      for (const auto& v : variables_of(r))
        if (!declared.count(v)) error(r.loc, where + ": undeclared variable '" + v + "'");
  }
  return out;
}

RelationMatrix RelationMatrix::from_code(const CodeMatrix& m) {
  RelationMatrix out(m.states);
  for (const auto& c : m.cells) {
    auto i = m.state_index(c.from);
    auto j = m.state_index(c.to);
    if (!i || !j || c.rules.empty()) continue;
    if (auto* existing = out.at(*i, *j)) {
      out.set(*i, *j, RelationExpr::alt(*existing, CodeMatrix::cell_relation(c)));
    } else {
      out.set(*i, *j, CodeMatrix::cell_relation(c));
    }
  }
  return out;
}

RelationMatrix RelationMatrix::identity(std::vector<std::string> states) {
  RelationMatrix out(std::move(states));
  for (std::size_t i = 0; i < out.size(); ++i)
    out.set(i, i, RelationExpr::make_guard(Expr::boolean(true)));
  return out;
}

const RelationExpr* RelationMatrix::at(std::size_t from, std::size_t to) const {
  auto it = cells_.find({from, to});
  return it == cells_.end() ? nullptr : &it->second;
}

void RelationMatrix::set(std::size_t from, std::size_t to, RelationExpr r) {
  cells_.insert_or_assign({from, to}, std::move(r));
}

RelationMatrix product(const RelationMatrix& m, const RelationMatrix& n) {
  if (m.states() != n.states()) throw std::invalid_argument("product: control state sets differ");
  RelationMatrix out(m.states());
  const auto k = m.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      std::optional<RelationExpr> acc;
      for (std::size_t j = 0; j < k; ++j) {
        const auto* a = m.at(i, j);
        const auto* b = n.at(j, l);
        if (!a || !b) continue;
        auto term = RelationExpr::seq(*a, *b);
        acc = acc ? RelationExpr::alt(std::move(*acc), std::move(term)) : std::move(term);
      }
      if (acc) out.set(i, l, std::move(*acc));
    }
  }
  return out;
}

RelationMatrix power(const RelationMatrix& m, unsigned n) {
  RelationMatrix out = RelationMatrix::identity(m.states());
  for (unsigned i = 0; i < n; ++i) out = product(out, m);
  return out;
}

StateSet cell_image(const RelationMatrix& m, std::size_t from, std::size_t to, const DataState& d) {
  const auto* r = m.at(from, to);
  if (!r) return {};
  return image(*r, d);
}

}  // namespace mxc
