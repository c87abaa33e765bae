#ifndef MATRIXCODE_KLEENE_HPP
#define MATRIXCODE_KLEENE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matrixcode/matrix.hpp"
#include "matrixcode/verifier.hpp"

namespace mxc {

/// A binary relation on {0, ..., n-1}, stored as one bit row per element.
class FiniteRelation {
 public:
  FiniteRelation() = default;
  explicit FiniteRelation(std::size_t n);

  static FiniteRelation identity(std::size_t n);
  static FiniteRelation full(std::size_t n);
  static FiniteRelation from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  std::size_t size() const noexcept { return n_; }
  bool contains(std::size_t i, std::size_t j) const;
  void insert(std::size_t i, std::size_t j);
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  FiniteRelation& operator|=(const FiniteRelation& o);
  bool subset_of(const FiniteRelation& o) const;
  bool operator==(const FiniteRelation& o) const = default;

 private:
  friend FiniteRelation compose(const FiniteRelation& a, const FiniteRelation& b);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

FiniteRelation unite(FiniteRelation a, const FiniteRelation& b);
/// a;b = {(x,z) | exists y. (x,y) in a and (y,z) in b}.
FiniteRelation compose(const FiniteRelation& a, const FiniteRelation& b);
/// R^0 = I, R^k = R^(k-1);R.
FiniteRelation power(const FiniteRelation& r, unsigned k);
/// Reflexive-transitive closure: least fixpoint of X = I + X;r.
FiniteRelation closure(const FiniteRelation& r);
/// `{(0,1), (1,2)}`.
std::string to_string(const FiniteRelation& r);

/// A set of words of length at most `bound`. Every operation truncates its
/// result at the bound, so equalities are asserted only up to it.
class BoundedLanguage {
 public:
  BoundedLanguage() = default;
  explicit BoundedLanguage(std::size_t bound, std::set<std::string> words = {});

  static BoundedLanguage epsilon(std::size_t bound);

  std::size_t bound() const noexcept { return bound_; }
  const std::set<std::string>& words() const noexcept { return words_; }
  bool contains(const std::string& w) const { return words_.count(w) > 0; }
  void insert(const std::string& w);
  std::size_t size() const noexcept { return words_.size(); }

  BoundedLanguage& operator|=(const BoundedLanguage& o);
  bool subset_of(const BoundedLanguage& o) const;
  bool operator==(const BoundedLanguage& o) const = default;

 private:
  std::size_t bound_ = 0;
  std::set<std::string> words_;
};

BoundedLanguage unite(BoundedLanguage a, const BoundedLanguage& b);
BoundedLanguage concat(const BoundedLanguage& a, const BoundedLanguage& b);
BoundedLanguage power(const BoundedLanguage& a, unsigned k);
/// Kleene star truncated at the bound.
BoundedLanguage star(const BoundedLanguage& a);
/// `{e, "x", "xx"}`; `e` is the empty word.
std::string to_string(const BoundedLanguage& l);

/// Regular expressions over named constants.
struct RegexExpr {
  enum class Kind { Const, Zero, One, Plus, Dot, Star, Pow, Times, Sum };

  Kind kind = Kind::Zero;
  std::string name;     // Const
  unsigned count = 0;   // Pow: E^count, Times: count·E
  std::vector<RegexExpr> args;

  static RegexExpr constant(std::string name);
  static RegexExpr zero();
  static RegexExpr one();
  static RegexExpr plus(RegexExpr a, RegexExpr b);
  static RegexExpr dot(RegexExpr a, RegexExpr b);
  static RegexExpr star(RegexExpr a);
  static RegexExpr pow(RegexExpr a, unsigned n);
  static RegexExpr times(unsigned n, RegexExpr a);
  /// Sum of a finite list; the empty sum is 0.
  static RegexExpr sum(std::vector<RegexExpr> terms);

  bool operator==(const RegexExpr&) const = default;
};

std::string to_string(const RegexExpr& e);

class UnboundConstant : public std::runtime_error {
 public:
  explicit UnboundConstant(const std::string& name)
      : std::runtime_error("unbound constant '" + name + "'") {}
};

/// Relational semantics over {0..n-1}: 0 empty, 1 identity, + union,
/// · composition, * closure.
FiniteRelation interp(const RegexExpr& e, const std::map<std::string, FiniteRelation>& env, std::size_t n);
/// Language semantics truncated at `bound`: 0 empty, 1 {e}, + union,
/// · concatenation, * star.
BoundedLanguage interp(const RegexExpr& e, const std::map<std::string, BoundedLanguage>& env,
                       std::size_t bound);

/// One algebraic law. Equal laws assert lhs = rhs; Below laws assert
/// lhs ⊆ rhs. `standard` is false for variants expected to fail.
struct Law {
  enum class Relation { Equal, Below };

  std::string name;
  RegexExpr lhs;
  RegexExpr rhs;
  Relation relation = Relation::Equal;
  bool standard = true;
};

/// The law catalogue: semiring axioms, star laws, denesting, power
/// decomposition, monotonicity, and the two misprinted denesting forms.
std::vector<Law> standard_laws();

struct LawResult {
  std::string law;
  std::string semantics;  // "relations" or "languages"
  bool standard = true;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<std::string> counterexample;
};

struct IdentityReport {
  std::vector<LawResult> results;

  /// Standard laws never fail and every nonstandard variant has a
  /// recorded counterexample.
  bool as_expected() const;
};

/// Evaluates every law on `trials` random environments per semantics
/// (relations on up to 4 points, languages over {a,b} bounded at 4).
IdentityReport check_identities(std::uint64_t seed, std::size_t trials,
                                const std::vector<Law>& laws = standard_laws());
std::string format_identity_report(const IdentityReport& r);

/// A finite-state machine whose transitions are labelled by finite word
/// sets: delta[(from, to)].
struct FSM {
  std::vector<std::string> states;
  std::set<char> alphabet;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> delta;
  std::string start;
  std::string halt;
};

/// Structural problems: unknown states, start = halt, transitions into
/// the start state or out of the halt state, symbols outside the alphabet.
std::vector<std::string> validate(const FSM& f);

struct FsmLanguage {
  BoundedLanguage by_closure;
  BoundedLanguage by_search;
};

/// (a) entry [S,H] of the truncated closure of the word-set matrix;
/// (b) breadth-first search over configurations (state, consumed prefix).
FsmLanguage fsm_language(const FSM& f, std::size_t bound);
bool accepts(const FSM& f, const std::string& word);

/// The signed-decimal machine: optional sign, then one or more digits.
FSM decimal_fsm();

/// A matrix of finite relations, indexed [from][to].
using RelationTable = std::vector<std::vector<FiniteRelation>>;

/// Least X with X = I + X;M, computed by iteration to a fixpoint.
RelationTable matrix_star(const RelationTable& m);
/// {(d, d') | (S,d) reaches (H,d') in the configuration graph of `m`}.
FiniteRelation search_relation(const RelationTable& m, std::size_t start, std::size_t halt);

struct DsmRelation {
  /// Data states: the domain closed under every cell's image.
  std::vector<DataState> universe;
  /// Indices into `universe` of the domain's states.
  std::size_t domain_size = 0;
  FiniteRelation by_closure;
  FiniteRelation by_search;

  bool agree() const { return by_closure == by_search; }
  /// Pairs whose first component lies in the domain.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
};

/// delta*[S,H] over the states of `dom`: once by closing the tabulated
/// relation matrix, once by configuration-graph reachability. Throws
/// std::length_error when the universe would exceed `max_states`.
DsmRelation finite_dsm_relation(const CodeMatrix& m, const DomainSpec& dom, std::size_t max_states = 4096);

/// Seeded generators shared by tests and the command line.
FiniteRelation random_relation(std::mt19937_64& rng, std::size_t n, double density);
RelationTable random_table(std::mt19937_64& rng, std::size_t k, std::size_t n, double density);
FSM random_fsm(std::mt19937_64& rng, std::size_t max_states, std::size_t max_symbols, std::size_t max_word);
/// Uniform integer in [lo, hi] by rejection sampling, identical on every
/// platform (unlike std::uniform_int_distribution).
std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

}  // namespace mxc

#endif  // MATRIXCODE_KLEENE_HPP
