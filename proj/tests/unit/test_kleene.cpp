#include <random>

#include "doctest.h"
#include "matrixcode/dsl.hpp"
#include "matrixcode/kleene.hpp"
#include "support.hpp"

using namespace mxc;
using mxc::testing::fixture_path;
using mxc::testing::load_program;

TEST_CASE("relation algebra basics") {
  const auto r = FiniteRelation::from_pairs(3, {{0, 1}, {1, 2}});
  CHECK(to_string(r) == "{(0,1), (1,2)}");
  CHECK(to_string(compose(r, r)) == "{(0,2)}");
  CHECK(power(r, 0) == FiniteRelation::identity(3));
  CHECK(power(r, 3).empty());
  const auto c = closure(r);
  CHECK(c == FiniteRelation::from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}}));
  CHECK(unite(r, FiniteRelation::identity(3)).count() == 5);
  CHECK(r.subset_of(c));
  CHECK_FALSE(c.subset_of(r));
}

TEST_CASE("relations wider than one machine word") {
  FiniteRelation r(70);
  for (std::size_t i = 0; i + 1 < 70; ++i) r.insert(i, i + 1);
  CHECK(closure(r).contains(0, 69));
  CHECK_FALSE(closure(r).contains(69, 0));
  CHECK(closure(r).count() == 70 * 71 / 2);
}

TEST_CASE("closure is the least reflexive transitive fixpoint") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 6));
    const auto r = random_relation(rng, n, 0.3);
    const auto c = closure(r);
    CHECK(closure(c) == c);
    CHECK(r.subset_of(c));
    CHECK(FiniteRelation::identity(n).subset_of(c));
    CHECK(compose(c, c) == c);
  }
}

TEST_CASE("bounded languages truncate at the bound") {
  BoundedLanguage a(3, {"a"});
  CHECK(to_string(star(a)) == "{e, \"a\", \"aa\", \"aaa\"}");
  CHECK(concat(a, BoundedLanguage(3, {"bbb"})).size() == 0);
  CHECK(power(a, 0) == BoundedLanguage::epsilon(3));
  BoundedLanguage b(2);
  b.insert("abc");
  CHECK(b.size() == 0);
}

TEST_CASE("regular expressions print with minimal parentheses") {
  const auto e = RegexExpr::constant("E");
  const auto f = RegexExpr::constant("F");
  CHECK(to_string(RegexExpr::star(RegexExpr::plus(e, f))) == "(E+F)*");
  CHECK(to_string(RegexExpr::plus(RegexExpr::dot(e, f), RegexExpr::star(e))) == "E·F+E*");
  CHECK(to_string(RegexExpr::pow(e, 3)) == "E^3");
}

TEST_CASE("both semantics of a regular expression") {
  const auto e = RegexExpr::constant("E");
  const auto x = RegexExpr::plus(RegexExpr::one(), RegexExpr::dot(e, e));
  const auto rel = interp(x, {{"E", FiniteRelation::from_pairs(3, {{0, 1}, {1, 2}})}}, 3);
  CHECK(rel == FiniteRelation::from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 2}}));
  const auto lang = interp(x, {{"E", BoundedLanguage(4, {"a", "b"})}}, 4);
  CHECK(to_string(lang) == "{e, \"aa\", \"ab\", \"ba\", \"bb\"}");
  CHECK_THROWS_AS(interp(RegexExpr::constant("G"), std::map<std::string, FiniteRelation>{}, 2), UnboundConstant);
}

TEST_CASE("law catalogue: standard laws hold, printed variants fail") {
  const auto report = check_identities(7, 200);
  CHECK(report.as_expected());
  std::size_t printed = 0;
  for (const auto& r : report.results) {
    if (r.standard) {
      CHECK_MESSAGE(r.failures == 0, r.law << " under " << r.semantics);
    } else {
      ++printed;
      CHECK(r.failures > 0);
      CHECK(r.counterexample.has_value());
    }
  }
  CHECK(printed == 4);  // two variants, two semantics
  CHECK(format_identity_report(report).find("printed variants refuted") != std::string::npos);
}

TEST_CASE("the numeral machine's language") {
  const FSM f = decimal_fsm();
  CHECK(validate(f).empty());
  const auto lang = fsm_language(f, 2);
  CHECK(lang.by_closure == lang.by_search);
  CHECK(lang.by_closure.size() == 130);
  CHECK(lang.by_closure.contains("+1"));
  CHECK(lang.by_closure.contains("-9"));
  CHECK_FALSE(lang.by_closure.contains(""));
  CHECK(accepts(f, "-123"));
  CHECK(fsm_language(f, 4).by_search.contains("-123"));
  CHECK_FALSE(accepts(f, "12-"));
  CHECK_FALSE(accepts(f, ""));
}

TEST_CASE("random machines: closure and search agree") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const FSM f = random_fsm(rng, 4, 2, 2);
    REQUIRE(validate(f).empty());
    const auto bound = static_cast<std::size_t>(uniform(rng, 0, 4));
    const auto lang = fsm_language(f, bound);
    CHECK(lang.by_closure == lang.by_search);
    for (const auto& w : lang.by_search.words()) CHECK(accepts(f, w));
  }
}

TEST_CASE("random relation tables: matrix star and search agree") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto k = static_cast<std::size_t>(uniform(rng, 2, 4));
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 4));
    const auto table = random_table(rng, k, n, 0.3);
    CHECK(matrix_star(table)[0][k - 1] == search_relation(table, 0, k - 1));
  }
}

TEST_CASE("the input-output relation of a code matrix, two ways") {
  const auto tiny = load_program(fixture_path("tiny.mxc"));
  const auto r = finite_dsm_relation(tiny.matrix, *tiny.domain);
  CHECK(r.agree());
  CHECK(r.pairs().size() == 1);

  auto null = parse_program(R"(
    dsm null {
      var x: int;
      states S, H;
      start S;
      halt H;
      domain { x in 0..3; }
    })");
  REQUIRE(null.ok());
  const auto z = finite_dsm_relation(null.program->matrix, *null.program->domain);
  CHECK(z.agree());
  CHECK(z.pairs().empty());
}

TEST_CASE("the universe bound is enforced") {
  auto grow = parse_program(R"(
    dsm grow {
      var x: int;
      states S, H;
      start S;
      halt H;
      from S to H: { x = x + 1; };
      domain { x in 0..9; }
    })");
  REQUIRE(grow.ok());
  // Images of images are added too, so an unguarded increment never closes.
  CHECK_THROWS_AS(finite_dsm_relation(grow.program->matrix, *grow.program->domain, 50), std::length_error);

  auto capped = parse_program(R"(
    dsm capped {
      var x: int;
      states S, H;
      start S;
      halt H;
      from S to H: [x < 9]; { x = x + 1; };
      domain { x in 0..9; }
    })");
  REQUIRE(capped.ok());
  const auto r = finite_dsm_relation(capped.program->matrix, *capped.program->domain);
  CHECK(r.agree());
  CHECK(r.domain_size == 10);
  CHECK(r.universe.size() == 10);
  CHECK(r.pairs().size() == 9);
}

TEST_CASE("the portable generator is deterministic and in range") {
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const auto x = uniform(a, 3, 9);
    CHECK(x == uniform(b, 3, 9));
    CHECK(x >= 3);
    CHECK(x <= 9);
  }
}
