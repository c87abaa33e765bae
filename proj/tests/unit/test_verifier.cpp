#include "doctest.h"
#include "matrixcode/dsl.hpp"
#include "matrixcode/interpreter.hpp"
#include "matrixcode/verifier.hpp"
#include "support.hpp"

using namespace mxc;
using mxc::testing::corpus;
using mxc::testing::fixture_path;
using mxc::testing::load_program;

namespace {

Program tiny() { return load_program(fixture_path("tiny.mxc")); }

VarDomain range(const std::string& name, std::int64_t lo, std::int64_t hi) {
  VarDomain v;
  v.name = name;
  v.kind = VarDomain::Kind::Range;
  v.lo = lo;
  v.hi = hi;
  return v;
}

Expr resolved(const std::string& text, const Schema& s) {
  Expr e = parse_expr(text);
  Diagnostics diags;
  resolve(e, s, diags);
  REQUIRE(diags.empty());
  return e;
}

RelationExpr resolved_rule(const std::string& text, const Schema& s) {
  RelationExpr r = parse_rule(text);
  Diagnostics diags;
  resolve(r, s, diags);
  REQUIRE(diags.empty());
  return r;
}

}  // namespace

TEST_CASE("domain enumeration covers the product of the choices") {
  const auto p = tiny();
  DomainSpec d;
  d.set(range("x", -2, 2));
  CHECK(enumerate_states(p.matrix.schema, d).size() == 5);
  d.vars[0].allow_unset = true;
  CHECK(enumerate_states(p.matrix.schema, d).size() == 6);
}

TEST_CASE("array lengths follow the enumerated scalar") {
  const auto p = corpus("primes");
  DomainSpec d;
  d.set(range("N", 2, 3));
  VarDomain elems;
  elems.name = "p";
  elems.kind = VarDomain::Kind::Elements;
  elems.lo = 0;
  elems.hi = 1;
  d.set(elems);
  // N=2: 4 arrays, N=3: 8 arrays; k, j, n stay unset.
  CHECK(enumerate_states(p.matrix.schema, d).size() == 12);
}

TEST_CASE("sorted stream domains are nondecreasing") {
  const auto p = corpus("mrg2");
  const auto& dom = *p.domain;
  const auto* left = dom.find("left");
  REQUIRE(left != nullptr);
  CHECK(left->sorted);
  DomainSpec d;
  d.set(*left);
  // lengths 0..2 over 0..2: 1 + 3 + 6
  CHECK(enumerate_states(p.matrix.schema, d).size() == 10);
}

TEST_CASE("triples: holds, counterexample, evaluation error") {
  const auto p = tiny();
  const auto& s = p.matrix.schema;
  DomainSpec d;
  d.set(range("x", 0, 3));
  const auto body = resolved_rule("{ x = x + 1; }", s);

  auto ok = check_triple(resolved("x == 0", s), body, resolved("x == 1", s), s, d);
  CHECK(ok.verdict == TripleResult::Verdict::Holds);
  CHECK(ok.checked == 4);

  auto bad = check_triple(resolved("x >= 0", s), body, resolved("x <= 3", s), s, d);
  CHECK(bad.verdict == TripleResult::Verdict::Counterexample);
  REQUIRE(bad.before);
  CHECK(format_state(s, *bad.before) == "{x=3}");
  CHECK(format_state(s, *bad.after) == "{x=4}");

  auto err = check_triple(resolved("x >= 0", s), resolved_rule("{ x = 6 / x; }", s), resolved("true", s), s, d);
  CHECK(err.verdict == TripleResult::Verdict::Error);
}

TEST_CASE("the prime condition vector holds on a small domain") {
  const auto p = corpus("primes");
  DomainSpec d = *p.domain;
  d.set(range("N", 2, 3));
  const auto report = check_vector(*p.conditions, p.matrix, d);
  CHECK(report.holds());
  CHECK(report.cells.size() == 7);
}

TEST_CASE("a corrupted cell is named by the vector check") {
  const auto p = load_program(fixture_path("corrupted-primes.mxc"));
  DomainSpec d = *p.domain;
  d.set(range("N", 2, 3));
  const auto report = check_vector(*p.conditions, p.matrix, d);
  CHECK_FALSE(report.holds());
  int failing = 0;
  for (const auto& c : report.cells)
    if (!c.result.holds()) {
      ++failing;
      CHECK(c.from == "B");
      CHECK(c.to == "A");
    }
  CHECK(failing == 1);
}

TEST_CASE("dropping only the increment keeps partial correctness") {
  const auto p = load_program(fixture_path("unincremented-primes.mxc"));
  DomainSpec d = *p.domain;
  d.set(range("N", 2, 3));
  CHECK(check_vector(*p.conditions, p.matrix, d).holds());
}

TEST_CASE("a missing condition is refused") {
  const auto p = corpus("primes");
  ConditionVector v = *p.conditions;
  v.entries.erase("C");
  CHECK(missing_conditions(v, p.matrix) == std::vector<std::string>{"C"});
  CHECK_THROWS_AS(check_vector(v, p.matrix, *p.domain), std::invalid_argument);
}

TEST_CASE("monitoring prime runs finds no violations") {
  const auto p = corpus("primes");
  for (int n = 2; n <= 8; ++n) {
    const auto d = make_state(p.matrix.schema, parse_bindings({"N=" + std::to_string(n)}, p.matrix.schema));
    const Outcome o = run(p.matrix, d);
    CHECK(monitor(p.matrix, *p.conditions, o.trace).empty());
  }
}

TEST_CASE("monitoring catches a condition that the run breaks") {
  const auto p = load_program(fixture_path("corrupted-primes.mxc"));
  const auto d = make_state(p.matrix.schema, parse_bindings({"N=3"}, p.matrix.schema));
  const Outcome o = run(p.matrix, d);
  const auto violations = monitor(p.matrix, *p.conditions, o.trace);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations.front().control == "A");
}

TEST_CASE("completeness: stage 1 has a k<N witness in column A, the final stage none") {
  const auto p1 = corpus("primes1");
  const auto r1 = completeness(p1.matrix, *p1.conditions, *p1.domain);
  REQUIRE(r1.columns.count("A") == 1);
  const auto& s = p1.matrix.schema;
  for (const auto& w : r1.columns.at("A")) {
    CHECK(std::get<std::int64_t>(w.data[*s.slot_of("k")]) < std::get<std::int64_t>(w.data[*s.slot_of("N")]));
  }
  const auto starts = enumerate_states(s, *p1.samples);
  CHECK_FALSE(completeness_from_samples(p1.matrix, *p1.conditions, starts).complete());

  const auto p3 = corpus("primes");
  const auto samples = enumerate_states(p3.matrix.schema, *p3.samples);
  CHECK(completeness_from_samples(p3.matrix, *p3.conditions, samples).complete());
}

TEST_CASE("the merge matrices: complete at stage 2 only") {
  const auto m2 = corpus("mrg2");
  CHECK(check_vector(*m2.conditions, m2.matrix, *m2.domain).holds());
  CHECK(completeness(m2.matrix, *m2.conditions, *m2.domain).complete());
  for (const char* stage : {"mrg0", "mrg1"}) {
    const auto p = corpus(stage);
    CHECK(check_vector(*p.conditions, p.matrix, *p.domain).holds());
    CHECK_FALSE(completeness(p.matrix, *p.conditions, *p.domain).complete());
  }
}

TEST_CASE("reports are plain text") {
  const auto p = tiny();
  const auto vr = check_vector(*p.conditions, p.matrix, *p.domain);
  const std::string text = format_vector_report(p.matrix, *p.conditions, vr);
  CHECK(text.find("{S} [x == 0]; { x = 1; } {H}  holds") != std::string::npos);
  CHECK(text.find("vector holds: 1 of 1 cells hold") != std::string::npos);
  const auto cr = completeness(p.matrix, *p.conditions, *p.domain);
  CHECK(format_completeness(p.matrix, cr) == "completeness:\n  no incomplete columns\n");
}
