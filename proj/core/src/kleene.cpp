#include "matrixcode/kleene.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <tuple>

#include "matrixcode/interpreter.hpp"

namespace mxc {

// ---------------------------------------------------------------------------
// FiniteRelation

FiniteRelation::FiniteRelation(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

FiniteRelation FiniteRelation::identity(std::size_t n) {
  FiniteRelation r(n);
  for (std::size_t i = 0; i < n; ++i) r.insert(i, i);
  return r;
}

FiniteRelation FiniteRelation::full(std::size_t n) {
  FiniteRelation r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.insert(i, j);
  return r;
}

FiniteRelation FiniteRelation::from_pairs(std::size_t n,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  FiniteRelation r(n);
  for (auto [i, j] : pairs) r.insert(i, j);
  return r;
}

bool FiniteRelation::contains(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) return false;
  return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
}

void FiniteRelation::insert(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw std::out_of_range("relation pair outside the domain");
  bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
}

std::size_t FiniteRelation::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> FiniteRelation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (contains(i, j)) out.emplace_back(i, j);
  return out;
}

FiniteRelation& FiniteRelation::operator|=(const FiniteRelation& o) {
  if (o.n_ != n_) throw std::invalid_argument("relations over different domains");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

bool FiniteRelation::subset_of(const FiniteRelation& o) const {
  if (o.n_ != n_) throw std::invalid_argument("relations over different domains");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

FiniteRelation unite(FiniteRelation a, const FiniteRelation& b) {
  a |= b;
  return a;
}

FiniteRelation compose(const FiniteRelation& a, const FiniteRelation& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("relations over different domains");
  FiniteRelation out(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j)
      if (a.contains(i, j))
        for (std::size_t w = 0; w < a.words_; ++w) out.bits_[i * a.words_ + w] |= b.bits_[j * a.words_ + w];
  return out;
}

FiniteRelation power(const FiniteRelation& r, unsigned k) {
  FiniteRelation out = FiniteRelation::identity(r.size());
  for (unsigned i = 0; i < k; ++i) out = compose(out, r);
  return out;
}

FiniteRelation closure(const FiniteRelation& r) {
  FiniteRelation x = FiniteRelation::identity(r.size());
  while (true) {
    FiniteRelation next = unite(x, compose(x, r));
    if (next == x) return x;
    x = std::move(next);
  }
}

std::string to_string(const FiniteRelation& r) {
  std::string s = "{";
  bool first = true;
  for (auto [i, j] : r.pairs()) {
    if (!first) s += ", ";
    first = false;
    s += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// BoundedLanguage

BoundedLanguage::BoundedLanguage(std::size_t bound, std::set<std::string> words) : bound_(bound) {
  for (auto& w : words) insert(w);
}

BoundedLanguage BoundedLanguage::epsilon(std::size_t bound) { return BoundedLanguage(bound, {""}); }

void BoundedLanguage::insert(const std::string& w) {
  if (w.size() <= bound_) words_.insert(w);
}

BoundedLanguage& BoundedLanguage::operator|=(const BoundedLanguage& o) {
  if (o.bound_ != bound_) throw std::invalid_argument("languages with different bounds");
  words_.insert(o.words_.begin(), o.words_.end());
  return *this;
}

bool BoundedLanguage::subset_of(const BoundedLanguage& o) const {
  if (o.bound_ != bound_) throw std::invalid_argument("languages with different bounds");
  return std::includes(o.words_.begin(), o.words_.end(), words_.begin(), words_.end());
}

BoundedLanguage unite(BoundedLanguage a, const BoundedLanguage& b) {
  a |= b;
  return a;
}

BoundedLanguage concat(const BoundedLanguage& a, const BoundedLanguage& b) {
  if (a.bound() != b.bound()) throw std::invalid_argument("languages with different bounds");
  BoundedLanguage out(a.bound());
  for (const auto& u : a.words())
    for (const auto& v : b.words())
      if (u.size() + v.size() <= a.bound()) out.insert(u + v);
  return out;
}

BoundedLanguage power(const BoundedLanguage& a, unsigned k) {
  BoundedLanguage out = BoundedLanguage::epsilon(a.bound());
  for (unsigned i = 0; i < k; ++i) out = concat(out, a);
  return out;
}

BoundedLanguage star(const BoundedLanguage& a) {
  BoundedLanguage x = BoundedLanguage::epsilon(a.bound());
  while (true) {
    BoundedLanguage next = unite(x, concat(x, a));
    if (next == x) return x;
    x = std::move(next);
  }
}

std::string to_string(const BoundedLanguage& l) {
  std::string s = "{";
  bool first = true;
  for (const auto& w : l.words()) {
    if (!first) s += ", ";
    first = false;
    s += w.empty() ? "e" : "\"" + w + "\"";
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// RegexExpr

RegexExpr RegexExpr::constant(std::string name) {
  RegexExpr e;
  e.kind = Kind::Const;
  e.name = std::move(name);
  return e;
}

RegexExpr RegexExpr::zero() { return RegexExpr{}; }

RegexExpr RegexExpr::one() {
  RegexExpr e;
  e.kind = Kind::One;
  return e;
}

RegexExpr RegexExpr::plus(RegexExpr a, RegexExpr b) {
  RegexExpr e;
  e.kind = Kind::Plus;
  e.args = {std::move(a), std::move(b)};
  return e;
}

RegexExpr RegexExpr::dot(RegexExpr a, RegexExpr b) {
  RegexExpr e;
  e.kind = Kind::Dot;
  e.args = {std::move(a), std::move(b)};
  return e;
}

RegexExpr RegexExpr::star(RegexExpr a) {
  RegexExpr e;
  e.kind = Kind::Star;
  e.args = {std::move(a)};
  return e;
}

RegexExpr RegexExpr::pow(RegexExpr a, unsigned n) {
  RegexExpr e;
  e.kind = Kind::Pow;
  e.count = n;
  e.args = {std::move(a)};
  return e;
}

RegexExpr RegexExpr::times(unsigned n, RegexExpr a) {
  RegexExpr e;
  e.kind = Kind::Times;
  e.count = n;
  e.args = {std::move(a)};
  return e;
}

RegexExpr RegexExpr::sum(std::vector<RegexExpr> terms) {
  RegexExpr e;
  e.kind = Kind::Sum;
  e.args = std::move(terms);
  return e;
}

namespace {

int regex_precedence(const RegexExpr& e) {
  switch (e.kind) {
    case RegexExpr::Kind::Plus:
    case RegexExpr::Kind::Sum: return 1;
    case RegexExpr::Kind::Dot:
    case RegexExpr::Kind::Times: return 2;
    case RegexExpr::Kind::Star:
    case RegexExpr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string regex_text(const RegexExpr& e, int context) {
  std::string s;
  switch (e.kind) {
    case RegexExpr::Kind::Const: s = e.name; break;
    case RegexExpr::Kind::Zero: s = "0"; break;
    case RegexExpr::Kind::One: s = "1"; break;
    case RegexExpr::Kind::Plus: s = regex_text(e.args[0], 1) + "+" + regex_text(e.args[1], 2); break;
    case RegexExpr::Kind::Dot: s = regex_text(e.args[0], 2) + "·" + regex_text(e.args[1], 3); break;
    case RegexExpr::Kind::Star: s = regex_text(e.args[0], 4) + "*"; break;
    case RegexExpr::Kind::Pow: s = regex_text(e.args[0], 4) + "^" + std::to_string(e.count); break;
    case RegexExpr::Kind::Times: s = std::to_string(e.count) + regex_text(e.args[0], 3); break;
    case RegexExpr::Kind::Sum:
      if (e.args.empty()) return "0";
      for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? "+" : "") + regex_text(e.args[i], 2);
      break;
  }
  const int p = e.kind == RegexExpr::Kind::Sum && e.args.size() == 1 ? 5 : regex_precedence(e);
  return p < context ? "(" + s + ")" : s;
}

/// Shared evaluator: `Ops` supplies the semantic primitives.
template <typename T, typename Ops>
T interp_with(const RegexExpr& e, const std::map<std::string, T>& env, const Ops& ops) {
  using K = RegexExpr::Kind;
  switch (e.kind) {
    case K::Const: {
      auto it = env.find(e.name);
      if (it == env.end()) throw UnboundConstant(e.name);
      return it->second;
    }
    case K::Zero: return ops.zero();
    case K::One: return ops.one();
    case K::Plus: return unite(interp_with(e.args[0], env, ops), interp_with(e.args[1], env, ops));
    case K::Dot: return ops.dot(interp_with(e.args[0], env, ops), interp_with(e.args[1], env, ops));
    case K::Star: return ops.star(interp_with(e.args[0], env, ops));
    case K::Pow: return power(interp_with(e.args[0], env, ops), e.count);
    case K::Times: {
      T out = ops.zero();
      const T x = interp_with(e.args[0], env, ops);
      for (unsigned i = 0; i < e.count; ++i) out = unite(std::move(out), x);
      return out;
    }
    case K::Sum: {
      T out = ops.zero();
      for (const auto& a : e.args) out = unite(std::move(out), interp_with(a, env, ops));
      return out;
    }
  }
  return ops.zero();
}

struct RelationOps {
  std::size_t n;
  FiniteRelation zero() const { return FiniteRelation(n); }
  FiniteRelation one() const { return FiniteRelation::identity(n); }
  FiniteRelation dot(const FiniteRelation& a, const FiniteRelation& b) const { return compose(a, b); }
  FiniteRelation star(const FiniteRelation& a) const { return closure(a); }
};

struct LanguageOps {
  std::size_t bound;
  BoundedLanguage zero() const { return BoundedLanguage(bound); }
  BoundedLanguage one() const { return BoundedLanguage::epsilon(bound); }
  BoundedLanguage dot(const BoundedLanguage& a, const BoundedLanguage& b) const { return concat(a, b); }
  BoundedLanguage star(const BoundedLanguage& a) const { return mxc::star(a); }
};

}  // namespace

std::string to_string(const RegexExpr& e) { return regex_text(e, 0); }

FiniteRelation interp(const RegexExpr& e, const std::map<std::string, FiniteRelation>& env, std::size_t n) {
  return interp_with(e, env, RelationOps{n});
}

BoundedLanguage interp(const RegexExpr& e, const std::map<std::string, BoundedLanguage>& env,
                       std::size_t bound) {
  return interp_with(e, env, LanguageOps{bound});
}

// ---------------------------------------------------------------------------
// Law catalogue

std::vector<Law> standard_laws() {
  using R = RegexExpr;
  const R E = R::constant("E"), F = R::constant("F"), G = R::constant("G");
  const R zero = R::zero(), one = R::one();
  auto plus = R::plus;
  auto dot = R::dot;
  auto star = R::star;
  auto below = [](std::string name, R lhs, R rhs) {
    return Law{std::move(name), std::move(lhs), std::move(rhs), Law::Relation::Below, true};
  };
  auto powers_below = [&](unsigned n) {
    std::vector<R> terms;
    for (unsigned k = 0; k < n; ++k) terms.push_back(R::pow(E, k));
    return R::sum(std::move(terms));
  };
  const R EG = plus(E, G);

  std::vector<Law> laws = {
      {"plus commutative", plus(E, F), plus(F, E)},
      {"plus idempotent", plus(E, E), E},
      {"plus associative", plus(plus(E, F), G), plus(E, plus(F, G))},
      {"zero is the unit of plus", plus(zero, E), E},
      {"dot associative", dot(dot(E, F), G), dot(E, dot(F, G))},
      {"one is a left unit", dot(one, E), E},
      {"one is a right unit", dot(E, one), E},
      {"zero annihilates on the left", dot(zero, E), zero},
      {"zero annihilates on the right", dot(E, zero), zero},
      {"left distributivity", dot(E, plus(F, G)), plus(dot(E, F), dot(E, G))},
      {"right distributivity", dot(plus(E, F), G), plus(dot(E, G), dot(F, G))},
      {"star unfolds", star(E), plus(one, dot(E, star(E)))},
      {"star is idempotent", star(star(E)), star(E)},
      {"sum denesting", star(plus(E, F)), dot(star(dot(star(E), F)), star(E))},
      {"product denesting", star(dot(E, F)), plus(one, dot(dot(E, star(dot(F, E))), F))},
      {"power decomposition n=2", star(E), dot(star(R::pow(E, 2)), powers_below(2))},
      {"power decomposition n=3", star(E), dot(star(R::pow(E, 3)), powers_below(3))},
      {"multiples collapse", R::times(3, E), E},
      below("plus is monotone", plus(E, F), plus(EG, F)),
      below("dot is monotone on the left", dot(E, F), dot(EG, F)),
      below("dot is monotone on the right", dot(F, E), dot(F, EG)),
      below("star is monotone", star(E), star(EG)),
      {"printed sum denesting", star(plus(E, F)), dot(dot(star(E), F), star(E)), Law::Relation::Equal,
       false},
      {"printed product denesting", star(dot(E, F)), plus(one, dot(dot(E, star(dot(F, E))), E)),
       Law::Relation::Equal, false},
  };
  return laws;
}

bool IdentityReport::as_expected() const {
  for (const auto& r : results) {
    if (r.standard && r.failures > 0) return false;
    if (!r.standard && r.failures == 0) return false;
  }
  return true;
}

namespace {

constexpr std::size_t kLanguageBound = 4;

template <typename T>
bool law_holds(const Law& law, const T& lhs, const T& rhs) {
  return law.relation == Law::Relation::Equal ? lhs == rhs : lhs.subset_of(rhs);
}

template <typename T>
std::string describe(const std::map<std::string, T>& env, const T& lhs, const T& rhs) {
  std::string s;
  for (const auto& [name, value] : env) s += name + " = " + to_string(value) + ", ";
  return s + "lhs = " + to_string(lhs) + ", rhs = " + to_string(rhs);
}

BoundedLanguage random_language(std::mt19937_64& rng) {
  static const std::vector<std::string> kWords = {"", "a", "b", "aa", "ab", "ba", "bb"};
  BoundedLanguage l(kLanguageBound);
  const auto percent = uniform(rng, 10, 50);
  for (const auto& w : kWords)
    if (uniform(rng, 0, 99) < percent) l.insert(w);
  return l;
}

}  // namespace

IdentityReport check_identities(std::uint64_t seed, std::size_t trials, const std::vector<Law>& laws) {
  IdentityReport rep;
  std::mt19937_64 rng(seed);
  std::vector<LawResult> rel(laws.size()), lang(laws.size());
  for (std::size_t i = 0; i < laws.size(); ++i) {
    rel[i] = {laws[i].name, "relations", laws[i].standard, 0, 0, std::nullopt};
    lang[i] = {laws[i].name, "languages", laws[i].standard, 0, 0, std::nullopt};
  }

  for (std::size_t t = 0; t < trials; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 4));
    std::map<std::string, FiniteRelation> renv;
    for (const char* c : {"E", "F", "G"})
      renv[c] = random_relation(rng, n, static_cast<double>(uniform(rng, 10, 60)) / 100.0);
    std::map<std::string, BoundedLanguage> lenv;
    for (const char* c : {"E", "F", "G"}) lenv[c] = random_language(rng);

    for (std::size_t i = 0; i < laws.size(); ++i) {
      const auto rl = interp(laws[i].lhs, renv, n);
      const auto rr = interp(laws[i].rhs, renv, n);
      ++rel[i].trials;
      if (!law_holds(laws[i], rl, rr)) {
        ++rel[i].failures;
        if (!rel[i].counterexample) rel[i].counterexample = describe(renv, rl, rr);
      }
      const auto ll = interp(laws[i].lhs, lenv, kLanguageBound);
      const auto lr = interp(laws[i].rhs, lenv, kLanguageBound);
      ++lang[i].trials;
      if (!law_holds(laws[i], ll, lr)) {
        ++lang[i].failures;
        if (!lang[i].counterexample) lang[i].counterexample = describe(lenv, ll, lr);
      }
    }
  }
  for (std::size_t i = 0; i < laws.size(); ++i) {
    rep.results.push_back(std::move(rel[i]));
    rep.results.push_back(std::move(lang[i]));
  }
  return rep;
}

std::string format_identity_report(const IdentityReport& r) {
  std::ostringstream os;
  for (const auto& res : r.results) {
    const std::size_t passed = res.trials - res.failures;
    std::string verdict;
    if (res.standard) {
      verdict = res.failures == 0 ? "pass" : "FAIL";
    } else {
      verdict = res.failures > 0 ? "counterexample found (expected)" : "NO COUNTEREXAMPLE";
    }
    os << (res.semantics == "relations" ? "relations  " : "languages  ") << res.law;
    if (res.law.size() < 32) os << std::string(32 - res.law.size(), ' ');
    os << ' ' << passed << "/" << res.trials << "  " << verdict << '\n';
    if (!res.standard && res.counterexample) os << "    " << *res.counterexample << '\n';
    if (res.standard && res.counterexample) os << "    " << *res.counterexample << '\n';
  }
  os << (r.as_expected() ? "all standard laws hold; printed variants refuted\n"
                         : "unexpected result\n");
  return os.str();
}

// ---------------------------------------------------------------------------
// FSM

std::vector<std::string> validate(const FSM& f) {
  std::vector<std::string> out;
  auto known = [&](const std::string& k) { return std::find(f.states.begin(), f.states.end(), k) != f.states.end(); };
  if (!known(f.start)) out.push_back("start state '" + f.start + "' is not a state");
  if (!known(f.halt)) out.push_back("halt state '" + f.halt + "' is not a state");
  if (f.start == f.halt) out.push_back("start and halt must differ");
  for (const auto& [cell, words] : f.delta) {
    const auto& [from, to] = cell;
    if (!known(from) || !known(to)) out.push_back("transition " + from + "->" + to + " names an unknown state");
    if (to == f.start && !words.empty()) out.push_back("transition " + from + "->" + to + " enters the start state");
    if (from == f.halt && !words.empty()) out.push_back("transition " + from + "->" + to + " leaves the halt state");
    for (const auto& w : words)
      for (char c : w)
        if (!f.alphabet.count(c))
          out.push_back("transition " + from + "->" + to + " uses symbol '" + std::string(1, c) +
                        "' outside the alphabet");
  }
  return out;
}

FsmLanguage fsm_language(const FSM& f, std::size_t bound) {
  const std::size_t k = f.states.size();
  auto index = [&](const std::string& s) {
    return static_cast<std::size_t>(std::find(f.states.begin(), f.states.end(), s) - f.states.begin());
  };
  const std::size_t s = index(f.start), h = index(f.halt);

  // (a) X = I + X·M over word-set matrices.
  std::vector<std::vector<BoundedLanguage>> m(k, std::vector<BoundedLanguage>(k, BoundedLanguage(bound)));
  for (const auto& [cell, words] : f.delta)
    for (const auto& w : words) m[index(cell.first)][index(cell.second)].insert(w);
  std::vector<std::vector<BoundedLanguage>> x(k, std::vector<BoundedLanguage>(k, BoundedLanguage(bound)));
  for (std::size_t i = 0; i < k; ++i) x[i][i] = BoundedLanguage::epsilon(bound);
  while (true) {
    auto next = x;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = 0; l < k; ++l) next[i][l] |= concat(x[i][j], m[j][l]);
    if (next == x) break;
    x = std::move(next);
  }

  // (b) Breadth-first search over (state, consumed prefix).
  BoundedLanguage found(bound);
  std::set<std::pair<std::size_t, std::string>> seen{{s, ""}};
  std::deque<std::pair<std::size_t, std::string>> queue{{s, ""}};
  while (!queue.empty()) {
    auto [state, prefix] = queue.front();
    queue.pop_front();
    if (state == h) found.insert(prefix);
    for (std::size_t to = 0; to < k; ++to) {
      for (const auto& w : m[state][to].words()) {
        if (prefix.size() + w.size() > bound) continue;
        std::pair<std::size_t, std::string> next{to, prefix + w};
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    }
  }
  return {x[s][h], found};
}

bool accepts(const FSM& f, const std::string& word) {
  std::set<std::pair<std::string, std::size_t>> seen{{f.start, 0}};
  std::deque<std::pair<std::string, std::size_t>> queue{{f.start, 0}};
  while (!queue.empty()) {
    auto [state, pos] = queue.front();
    queue.pop_front();
    if (state == f.halt && pos == word.size()) return true;
    for (const auto& [cell, words] : f.delta) {
      if (cell.first != state) continue;
      for (const auto& w : words) {
        if (pos + w.size() > word.size() || word.compare(pos, w.size(), w) != 0) continue;
        std::pair<std::string, std::size_t> next{cell.second, pos + w.size()};
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    }
  }
  return false;
}

FSM decimal_fsm() {
  FSM f;
  f.states = {"S", "A", "B", "H"};
  f.start = "S";
  f.halt = "H";
  std::set<std::string> digits;
  for (char c = '0'; c <= '9'; ++c) {
    f.alphabet.insert(c);
    digits.insert(std::string(1, c));
  }
  f.alphabet.insert('+');
  f.alphabet.insert('-');
  f.delta[{"S", "A"}] = {"+", "-", ""};
  f.delta[{"A", "B"}] = digits;
  f.delta[{"B", "B"}] = digits;
  f.delta[{"B", "A"}] = digits;
  f.delta[{"B", "H"}] = {""};
  return f;
}

// ---------------------------------------------------------------------------
// Closure over relation matrices

RelationTable matrix_star(const RelationTable& m) {
  const std::size_t k = m.size();
  const std::size_t n = k ? m[0][0].size() : 0;
  RelationTable x(k, std::vector<FiniteRelation>(k, FiniteRelation(n)));
  for (std::size_t i = 0; i < k; ++i) x[i][i] = FiniteRelation::identity(n);
  while (true) {
    RelationTable next = x;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (x[i][j].empty()) continue;
        for (std::size_t l = 0; l < k; ++l) next[i][l] |= compose(x[i][j], m[j][l]);
      }
    if (next == x) return x;
    x = std::move(next);
  }
}

FiniteRelation search_relation(const RelationTable& m, std::size_t start, std::size_t halt) {
  const std::size_t k = m.size();
  const std::size_t n = k ? m[0][0].size() : 0;
  FiniteRelation out(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<char> seen(k * n, 0);
    std::deque<std::pair<std::size_t, std::size_t>> queue{{start, d}};
    seen[start * n + d] = 1;
    while (!queue.empty()) {
      auto [state, x] = queue.front();
      queue.pop_front();
      if (state == halt) out.insert(d, x);
      for (std::size_t to = 0; to < k; ++to)
        for (std::size_t y = 0; y < n; ++y)
          if (m[state][to].contains(x, y) && !seen[to * n + y]) {
            seen[to * n + y] = 1;
            queue.emplace_back(to, y);
          }
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> DsmRelation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto p : by_closure.pairs())
    if (p.first < domain_size) out.push_back(p);
  return out;
}

DsmRelation finite_dsm_relation(const CodeMatrix& m, const DomainSpec& dom, std::size_t max_states) {
  DsmRelation out;
  std::map<DataState, std::size_t> index;
  auto intern = [&](const DataState& d) {
    auto [it, fresh] = index.emplace(d, out.universe.size());
    if (fresh) {
      if (out.universe.size() >= max_states)
        throw std::length_error("state universe exceeds " + std::to_string(max_states) + " states");
      out.universe.push_back(d);
    }
    return it->second;
  };
  for (const auto& d : enumerate_states(m.schema, dom)) intern(d);
  out.domain_size = out.universe.size();

  // Close the universe under every cell and tabulate each cell's relation.
  const std::size_t k = m.states.size();
  std::vector<std::tuple<std::size_t, std::size_t, RelationExpr>> cells;
  for (const auto& c : m.cells)
    if (auto i = m.state_index(c.from), j = m.state_index(c.to); i && j && !c.rules.empty())
      cells.emplace_back(*i, *j, CodeMatrix::cell_relation(c));
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> edges;
  for (std::size_t d = 0; d < out.universe.size(); ++d)
    for (const auto& [i, j, r] : cells)
      for (const auto& img : image(r, out.universe[d])) edges.emplace_back(i, j, d, intern(img));

  const std::size_t n = out.universe.size();
  RelationTable table(k, std::vector<FiniteRelation>(k, FiniteRelation(n)));
  for (auto [i, j, a, b] : edges) table[i][j].insert(a, b);
  const auto s = *m.state_index(m.start), h = *m.state_index(m.halt);
  out.by_closure = matrix_star(table)[s][h];

  // Independent path: explore configurations with the interpreter's step.
  out.by_search = FiniteRelation(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::set<Configuration> seen{{s, out.universe[d]}};
    std::deque<Configuration> queue{{s, out.universe[d]}};
    while (!queue.empty()) {
      Configuration c = std::move(queue.front());
      queue.pop_front();
      if (c.control == h) out.by_search.insert(d, index.at(c.data));
      for (auto& next : step(m, c, Policy::All))
        if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Seeded generators

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform: empty range");
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return rng();
  const std::uint64_t range = span + 1;
  const std::uint64_t threshold = (0 - range) % range;  // 2^64 mod range
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return lo + x % range;
  }
}

FiniteRelation random_relation(std::mt19937_64& rng, std::size_t n, double density) {
  FiniteRelation r(n);
  const auto cutoff = static_cast<std::uint64_t>(density * 1000.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (uniform(rng, 0, 999) < cutoff) r.insert(i, j);
  return r;
}

RelationTable random_table(std::mt19937_64& rng, std::size_t k, std::size_t n, double density) {
  RelationTable t(k, std::vector<FiniteRelation>(k, FiniteRelation(n)));
  for (std::size_t i = 0; i + 1 < k; ++i)
    for (std::size_t j = 1; j < k; ++j) t[i][j] = random_relation(rng, n, density);
  return t;
}

FSM random_fsm(std::mt19937_64& rng, std::size_t max_states, std::size_t max_symbols, std::size_t max_word) {
  FSM f;
  const auto k = static_cast<std::size_t>(uniform(rng, 2, std::max<std::size_t>(2, max_states)));
  f.states.push_back("S");
  for (std::size_t i = 1; i + 1 < k; ++i) f.states.push_back("K" + std::to_string(i));
  f.states.push_back("H");
  f.start = "S";
  f.halt = "H";
  const auto symbols = static_cast<std::size_t>(uniform(rng, 1, std::max<std::size_t>(1, max_symbols)));
  for (std::size_t i = 0; i < symbols; ++i) f.alphabet.insert(static_cast<char>('a' + i));
  const std::vector<char> alpha(f.alphabet.begin(), f.alphabet.end());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    for (std::size_t j = 1; j < k; ++j) {
      if (uniform(rng, 0, 1) == 0) continue;
      auto& words = f.delta[{f.states[i], f.states[j]}];
      const auto count = uniform(rng, 1, 2);
      for (std::uint64_t w = 0; w < count; ++w) {
        std::string word;
        const auto len = uniform(rng, 0, max_word);
        for (std::uint64_t c = 0; c < len; ++c) word += alpha[uniform(rng, 0, alpha.size() - 1)];
        words.insert(word);
      }
    }
  }
  return f;
}

}  // namespace mxc
