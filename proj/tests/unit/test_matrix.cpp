#include "doctest.h"
#include "matrixcode/dsl.hpp"
#include "matrixcode/matrix.hpp"
#include "support.hpp"

using namespace mxc;
using mxc::testing::corpus;

namespace {

CodeMatrix two_step() {
  auto r = parse_program(R"(
    dsm twostep {
      var x: int;
      states S, A, H;
      start S;
      halt H;
      from S to A: { x = x + 1; };
      from A to H: { x = x * 2; };
    })");
  REQUIRE(r.ok());
  return r.program->matrix;
}

bool mentions(const Diagnostics& ds, const std::string& text) {
  for (const auto& d : ds)
    if (d.message.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("the final prime matrix has five states and seven cells") {
  const auto p = corpus("primes");
  CHECK(p.matrix.states == std::vector<std::string>{"S", "A", "B", "C", "H"});
  CHECK(p.matrix.cells.size() == 7);
  CHECK(validate(p.matrix).empty());
}

TEST_CASE("cells out of a state keep declaration order") {
  const auto p = corpus("primes");
  const auto out = p.matrix.cells_from("A");
  REQUIRE(out.size() == 2);
  CHECK(out[0]->to == "H");
  CHECK(out[1]->to == "B");
  CHECK(p.matrix.find_cell("B", "C") != nullptr);
  CHECK(p.matrix.find_cell("C", "A") == nullptr);
}

TEST_CASE("validate reports start, halt and naming violations") {
  CodeMatrix m = two_step();
  CHECK(validate(m).empty());

  CodeMatrix into_start = m;
  into_start.cells.push_back(Cell{"A", "S", {parse_rule("[true]")}, {}});
  CHECK(mentions(validate(into_start), "enter the start state"));

  CodeMatrix out_of_halt = m;
  out_of_halt.cells.push_back(Cell{"H", "A", {parse_rule("[true]")}, {}});
  CHECK(mentions(validate(out_of_halt), "leave the halt state"));

  CodeMatrix dup = m;
  dup.states.push_back("A");
  CHECK(mentions(validate(dup), "duplicate control state 'A'"));

  CodeMatrix unknown = m;
  unknown.cells.push_back(Cell{"A", "Z", {parse_rule("[true]")}, {}});
  CHECK(mentions(validate(unknown), "unknown control state 'Z'"));

  CodeMatrix same = m;
  same.halt = "S";
  CHECK(mentions(validate(same), "start and halt must differ"));
}

TEST_CASE("matrix product composes through intermediate states") {
  const CodeMatrix m = two_step();
  const auto rm = RelationMatrix::from_code(m);
  const auto sq = product(rm, rm);
  const auto d = make_state(m.schema, {{"x", std::int64_t{1}}});
  const auto out = cell_image(sq, 0, 2, d);
  REQUIRE(out.size() == 1);
  CHECK(std::get<std::int64_t>(out[0][0]) == 4);
  CHECK(cell_image(rm, 0, 2, d).empty());
  CHECK(cell_image(power(rm, 3), 0, 2, d).empty());
}

TEST_CASE("power zero is the identity") {
  const CodeMatrix m = two_step();
  const auto id = power(RelationMatrix::from_code(m), 0);
  const auto d = make_state(m.schema, {{"x", std::int64_t{5}}});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(cell_image(id, i, i, d) == StateSet{d});
    CHECK(cell_image(id, i, (i + 1) % 3, d).empty());
  }
}

TEST_CASE("product rejects mismatched state lists") {
  RelationMatrix a(std::vector<std::string>{"S", "H"});
  RelationMatrix b(std::vector<std::string>{"S", "A", "H"});
  CHECK_THROWS_AS(product(a, b), std::invalid_argument);
}
