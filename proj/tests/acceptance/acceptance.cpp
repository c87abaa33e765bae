// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails. Details of a failure go to standard error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "matrixcode/codegen.hpp"
#include "matrixcode/dsl.hpp"
#include "matrixcode/interpreter.hpp"
#include "matrixcode/kleene.hpp"
#include "matrixcode/verifier.hpp"
#include "support.hpp"

using namespace mxc;
using namespace mxc::testing;
namespace fs = std::filesystem;

namespace {

/// Collects the reasons a criterion fails.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool passed() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

DataState start(const Program& p, const std::vector<std::string>& bindings) {
  return make_state(p.matrix.schema, parse_bindings(bindings, p.matrix.schema));
}

std::string squeeze(const std::string& line) {
  std::string out;
  std::istringstream in(line);
  for (std::string w; in >> w;) out += (out.empty() ? "" : " ") + w;
  return out;
}

std::vector<std::string> squeezed_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(squeeze(line));
  return out;
}

std::vector<std::int64_t> sieve_first(std::size_t n) {
  std::vector<bool> composite(1000, false);
  std::vector<std::int64_t> out;
  for (std::size_t i = 2; out.size() < n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::int64_t>(i));
    for (std::size_t j = i * i; j < composite.size(); j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::int64_t> array_values(const Value& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : std::get<IntArray>(v).items) out.push_back(x.value_or(-1));
  return out;
}

// 1 -------------------------------------------------------------------------
void prime_trace(Check& c) {
  const Program p = corpus("primes");
  const Outcome o = run(p.matrix, start(p, {"N=3"}));
  c.expect(o.status == Outcome::Status::Success, "run did not reach H");
  // The published computation, compared line by line up to spacing.
  const std::vector<std::string> expected = {
      "control | data N = 3",
      "state | state",
      "| k j n p",
      "-----------------------------------",
      "S | ? ? ? {?,?,?}",
      "A | 2 ? ? {2,3,?}",
      "B | 2 5 0 {2,3,?}",
      "C | 2 5 0 {2,3,?}",
      "B | 2 5 1 {2,3,?}",
      "A | 3 5 1 {2,3,5}",
      "H | 3 5 1 {2,3,5}",
  };
  const auto got = squeezed_lines(format_trace(p.matrix, o.trace));
  c.expect(got == expected, "trace table differs:\n" + format_trace(p.matrix, o.trace));
  const auto& s = p.matrix.schema;
  const auto& d = o.last().data;
  c.expect(std::get<std::int64_t>(d[*s.slot_of("k")]) == 3 && std::get<std::int64_t>(d[*s.slot_of("j")]) == 5 &&
               std::get<std::int64_t>(d[*s.slot_of("n")]) == 1 &&
               array_values(d[*s.slot_of("p")]) == std::vector<std::int64_t>{2, 3, 5},
           "final data state differs");
  std::ostringstream out, err;
  const std::string file = corpus_path("primes.mxc");
  const char* argv[] = {"matrixcode", "run", file.c_str(), "--input", "N=3"};
  c.expect(cli::main(5, argv, out, err) == 0, "command-line run did not exit 0");
}

// 2 -------------------------------------------------------------------------
void prime_correctness(Check& c) {
  const Program p = corpus("primes");
  const auto slot = *p.matrix.schema.slot_of("p");
  for (int n = 2; n <= 100; ++n) {
    const Outcome o = run(p.matrix, start(p, {"N=" + std::to_string(n)}));
    c.expect(o.status == Outcome::Status::Success && array_values(o.last().data[slot]) == sieve_first(n),
             "wrong table for N=" + std::to_string(n));
  }
}

// 3 -------------------------------------------------------------------------
void turing(Check& c) {
  const Program p = corpus("turing");
  const std::pair<const char*, const char*> cases[] = {
      {R"(tape("A ( ( ( ( ( ( ) ) ) ) A", 1))", "A ( 0 X X X X X X X X A"},
      {R"(tape("A ( ( ( ( ( ) ) ) ( ) ) ) A", 1))", "1 X X X X X X X X X X X X A"},
  };
  for (const auto& [input, expected] : cases) {
    const Outcome o = run(p.matrix, make_state(p.matrix.schema, {{"t", parse_literal(input)}}));
    const std::string got = std::get<Tape>(o.last().data[0]).contents();
    c.expect(o.status == Outcome::Status::Success && got == expected,
             std::string("tape ") + input + " gave '" + got + "'");
  }
}

// 4 -------------------------------------------------------------------------
void nondeterminism(Check& c) {
  const Program p = corpus("decnum");
  const auto outcomes = enumerate(p.matrix, start(p, {"left=\"-123\""}), 100);
  std::vector<std::string> leftovers;
  for (const auto& o : outcomes)
    if (o.status == Outcome::Status::Success) leftovers.push_back(format_value(o.last().data[0], VarKind::Text));
  std::sort(leftovers.begin(), leftovers.end());
  c.expect(leftovers == std::vector<std::string>{"\"\"", "\"23\"", "\"3\""},
           "successful computations: " + std::to_string(leftovers.size()));
  const FSM f = decimal_fsm();
  const auto lang = fsm_language(f, 4);
  c.expect(lang.by_closure.contains("-123") && lang.by_search.contains("-123") && accepts(f, "-123"),
           "'-123' not accepted");
}

// 5 -------------------------------------------------------------------------
void verification(Check& c) {
  const Program p = corpus("primes");
  c.expect(p.domain && p.domain->find("N") && p.domain->find("N")->hi == 4, "domain is not N <= 4");
  const auto vr = check_vector(*p.conditions, p.matrix, *p.domain);
  c.expect(vr.holds(), "condition vector fails:\n" + format_vector_report(p.matrix, *p.conditions, vr));
  for (int n = 2; n <= 12; ++n) {
    const Outcome o = run(p.matrix, start(p, {"N=" + std::to_string(n)}));
    c.expect(monitor(p.matrix, *p.conditions, o.trace).empty(), "violation for N=" + std::to_string(n));
  }
  const Program p1 = corpus("primes1");
  const auto& s1 = p1.matrix.schema;
  const auto r1 = completeness_from_samples(p1.matrix, *p1.conditions, enumerate_states(s1, *p1.samples));
  bool witness = false;
  if (r1.columns.count("A"))
    for (const auto& w : r1.columns.at("A"))
      witness = witness ||
                std::get<std::int64_t>(w.data[*s1.slot_of("k")]) < std::get<std::int64_t>(w.data[*s1.slot_of("N")]);
  c.expect(witness, "no k<N witness for stage 1");
  const auto& s3 = p.matrix.schema;
  c.expect(p.samples && p.samples->find("N")->hi == 10, "samples are not N <= 10");
  const auto r3 = completeness_from_samples(p.matrix, *p.conditions, enumerate_states(s3, *p.samples));
  c.expect(r3.complete(), "final stage has a witness:\n" + format_completeness(p.matrix, r3));
}

// 6 -------------------------------------------------------------------------
std::string table_source(const RelationTable& t, std::size_t n) {
  const std::size_t k = t.size();
  const auto name = [&](std::size_t i) {
    return i == 0 ? std::string("S") : i == k - 1 ? std::string("H") : "K" + std::to_string(i);
  };
  std::string src = "dsm random {\n  var x: int;\n  states ";
  for (std::size_t i = 0; i < k; ++i) src += (i ? ", " : "") + name(i);
  src += ";\n  start S;\n  halt H;\n";
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto pairs = t[i][j].pairs();
      if (pairs.empty()) continue;
      src += "  from " + name(i) + " to " + name(j) + ":";
      for (std::size_t q = 0; q < pairs.size(); ++q)
        src += std::string(q ? " |" : "") + " [x == " + std::to_string(pairs[q].first) + "]; { x = " +
               std::to_string(pairs[q].second) + "; }";
      src += ";\n";
    }
  src += "  domain { x in 0.." + std::to_string(n - 1) + "; }\n}\n";
  return src;
}

void closure_theorems(Check& c) {
  std::mt19937_64 rng(2024);
  int disagreements = 0;
  for (int t = 0; t < 200; ++t) {
    const auto k = static_cast<std::size_t>(uniform(rng, 2, 4));
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 4));
    const RelationTable table = random_table(rng, k, n, 0.1 + 0.1 * static_cast<double>(uniform(rng, 0, 4)));
    const auto parsed = parse_program(table_source(table, n));
    if (!parsed.ok()) {
      c.expect(false, "generated matrix does not parse:\n" + table_source(table, n));
      return;
    }
    const DsmRelation r = finite_dsm_relation(parsed.program->matrix, *parsed.program->domain);
    // The universe is the domain in enumeration order x = 0..n-1.
    const bool ok = r.agree() && r.universe.size() == n && r.by_closure == matrix_star(table)[0][k - 1] &&
                    search_relation(table, 0, k - 1) == r.by_search;
    if (!ok) ++disagreements;
  }
  c.expect(disagreements == 0, std::to_string(disagreements) + " matrices disagree");
  int fsm_disagreements = 0;
  for (int t = 0; t < 100; ++t) {
    const FSM f = random_fsm(rng, 4, 2, 2);
    const auto lang = fsm_language(f, static_cast<std::size_t>(uniform(rng, 0, 4)));
    if (!(lang.by_closure == lang.by_search)) ++fsm_disagreements;
  }
  c.expect(fsm_disagreements == 0, std::to_string(fsm_disagreements) + " machines disagree");
}

// 7 -------------------------------------------------------------------------
void kleene_laws(Check& c) {
  const IdentityReport r = check_identities(7, 500);
  for (const auto& l : r.results) {
    c.expect(l.trials == 500, l.law + ": " + std::to_string(l.trials) + " trials");
    if (l.standard)
      c.expect(l.failures == 0, l.law + " fails under " + l.semantics);
    else
      c.expect(l.failures > 0 && l.counterexample, l.law + " not refuted under " + l.semantics);
  }
  c.expect(r.as_expected(), "report is not as expected");
}

// 8 -------------------------------------------------------------------------
void merge_experiment(Check& c) {
  const auto e = parse_program(cli::emerge_source());
  const auto m = parse_program(cli::mmerge_source());
  if (!e.ok() || !m.ok()) {
    c.expect(false, "merge programs do not parse");
    return;
  }
  std::mt19937_64 rng(1);
  int e_above = 0;
  const int pairs = 200;
  for (int i = 0; i < pairs; ++i) {
    const auto sp = cli::random_stream_pair(rng);
    std::vector<std::int64_t> expected;
    std::merge(sp.left.items.begin(), sp.left.items.end(), sp.right.items.begin(), sp.right.items.end(),
               std::back_inserter(expected));
    const auto ce = cli::run_merge(e.program->matrix, sp);
    const auto cm = cli::run_merge(m.program->matrix, sp);
    const std::string at = " (pair " + std::to_string(i) + ")";
    c.expect(cm.halted && cm.output == expected, "mMerge output wrong" + at);
    c.expect(ce.halted && ce.output == expected, "eMerge output wrong" + at);
    c.expect(cm.getL <= cm.putL + 2 && cm.getR <= cm.putR + 2, "mMerge exceeds put+2" + at);
    c.expect(ce.getL + ce.getR >= cm.getL + cm.getR, "eMerge tests less than mMerge" + at);
    if (ce.getL > ce.putL + 2 || ce.getR > ce.putR + 2) ++e_above;
  }
  c.expect(2 * e_above >= pairs, "eMerge exceeds put+2 on only " + std::to_string(e_above) + " pairs");
}

// 9 -------------------------------------------------------------------------
bool have_c_compiler() { return std::system("cc --version > /dev/null 2>&1") == 0; }

std::string run_capture(const std::string& cmd) {
  std::string out;
  if (FILE* f = popen(cmd.c_str(), "r")) {
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, f)) out.append(buf, n);
    pclose(f);
  }
  return out;
}

void codegen(Check& c, std::string& note) {
  const std::pair<const char*, const char*> goldens[] = {
      {"primes", "primes.c"}, {"mrg2", "mrg2.c"}, {"turing", "turing.c"}};
  for (const auto& [name, golden] : goldens) {
    const Program p = corpus(name);
    c.expect(emit(p.matrix, p.matrix.name) == slurp(golden_path(golden)), std::string(golden) + " differs");
  }
  if (!have_c_compiler()) {
    note = "golden files only; no C compiler";
    return;
  }
  const fs::path dir = fs::temp_directory_path() / ("matrixcode-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto write = [&](const std::string& file, const std::string& text) {
    std::ofstream(dir / file, std::ios::binary) << text;
  };
  const std::string cc = "cc -std=c99 -O1 -I" + std::string(MATRIXCODE_RUNTIME_DIR) + " ";

  // Primes, N = 2..100.
  const Program primes = corpus("primes");
  write("primes.c", emit(primes.matrix, "prTable"));
  write("primes_main.c",
        "#include <stdio.h>\n#include <stdint.h>\n"
        "void prTable(int64_t N, int64_t p[]);\n"
        "int main(void) {\n"
        "  for (int64_t n = 2; n <= 100; ++n) {\n"
        "    int64_t p[100];\n"
        "    prTable(n, p);\n"
        "    printf(\"%lld:\", (long long)n);\n"
        "    for (int64_t i = 0; i < n; ++i) printf(\" %lld\", (long long)p[i]);\n"
        "    printf(\"\\n\");\n"
        "  }\n"
        "  return 0;\n"
        "}\n");
  std::string expected;
  const auto slot = *primes.matrix.schema.slot_of("p");
  for (int n = 2; n <= 100; ++n) {
    const Outcome o = run(primes.matrix, start(primes, {"N=" + std::to_string(n)}));
    expected += std::to_string(n) + ":";
    for (auto v : array_values(o.last().data[slot])) expected += " " + std::to_string(v);
    expected += "\n";
  }
  const std::string pexe = (dir / "primes").string();
  const int rc1 = std::system((cc + (dir / "primes.c").string() + " " + (dir / "primes_main.c").string() + " -o " +
                               pexe + " 2>&1")
                                  .c_str());
  c.expect(rc1 == 0, "emitted prime code does not compile");
  if (rc1 == 0) c.expect(run_capture(pexe) == expected, "compiled primes differ from the interpreter");

  // Merge on fixed pseudo-random pairs.
  const Program mrg = corpus("mrg2");
  write("mrg2.c", emit(mrg.matrix, "mMerge"));
  std::mt19937_64 rng(99);
  std::string main_src =
      "#include <stdio.h>\n#include <stdint.h>\n#include \"matrixcode_rt.h\"\n"
      "void mMerge(mc_trinity *io);\n"
      "static void go(const int64_t *l, size_t nl, const int64_t *r, size_t nr) {\n"
      "  int64_t out[128];\n"
      "  mc_trinity io = {l, nl, 0, r, nr, 0, out, 0, 0, 0, 0, 0};\n"
      "  mMerge(&io);\n"
      "  printf(\"%ld %ld %ld %ld:\", io.calls_getL, io.calls_getR, io.calls_putL, io.calls_putR);\n"
      "  for (size_t i = 0; i < io.out_len; ++i) printf(\" %lld\", (long long)out[i]);\n"
      "  printf(\"\\n\");\n"
      "}\n"
      "int main(void) {\n";
  std::string merge_expected;
  for (int i = 0; i < 20; ++i) {
    const auto sp = cli::random_stream_pair(rng);
    const auto array = [](const Stream& s) {
      std::string a = "{0";  // never empty in C
      for (auto v : s.items) a += ", " + std::to_string(v);
      return a + "}";
    };
    main_src += "  { static const int64_t l[] = " + array(sp.left) + ", r[] = " + array(sp.right) +
                "; go(l + 1, " + std::to_string(sp.left.items.size()) + ", r + 1, " +
                std::to_string(sp.right.items.size()) + "); }\n";
    const auto counts = cli::run_merge(mrg.matrix, sp);
    merge_expected += std::to_string(counts.getL) + " " + std::to_string(counts.getR) + " " +
                      std::to_string(counts.putL) + " " + std::to_string(counts.putR) + ":";
    for (auto v : counts.output) merge_expected += " " + std::to_string(v);
    merge_expected += "\n";
  }
  main_src += "  return 0;\n}\n";
  write("mrg2_main.c", main_src);
  const std::string mexe = (dir / "mrg2").string();
  const int rc2 = std::system(
      (cc + (dir / "mrg2.c").string() + " " + (dir / "mrg2_main.c").string() + " -o " + mexe + " 2>&1").c_str());
  c.expect(rc2 == 0, "emitted merge code does not compile");
  if (rc2 == 0) c.expect(run_capture(mexe) == merge_expected, "compiled merge differs from the interpreter");
  std::error_code ec;
  fs::remove_all(dir, ec);
  note = "golden files and compiled C";
}

// 10 ------------------------------------------------------------------------
void dsl(Check& c) {
  for (const char* name :
       {"primes0", "primes1", "primes2", "primes", "mrg0", "mrg1", "mrg2", "emerge", "turing", "decnum"}) {
    const Program p = corpus(name);
    const auto again = parse_program(render_source(p));
    c.expect(again.ok() && *again.program == p, std::string(name) + " does not round-trip");
  }
  const std::pair<const char*, const char*> fixtures[] = {
      {"err-into-start.mxc", "7:3: error: cell from A to S: no transition may enter the start state"},
      {"err-from-halt.mxc", "7:3: error: cell from H to A: no transition may leave the halt state"},
      {"err-undeclared.mxc", "6:17: error: undeclared variable 'q'"},
      {"err-builtin.mxc", "7:16: error: unknown builtin 'peekL'"},
      {"err-duplicate-state.mxc", "3:16: error: duplicate control state 'A'"},
      {"err-syntax.mxc", "6:21: error: expected an expression, found ']'"},
  };
  for (const auto& [file, expected] : fixtures) {
    const auto r = parse_program(slurp(fixture_path(file)));
    const bool ok = !r.ok() && !r.diagnostics.empty() && r.diagnostics[0].format().rfind(expected, 0) == 0;
    c.expect(ok, std::string(file) + ": " + (r.diagnostics.empty() ? "no diagnostic" : r.diagnostics[0].format()));
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<void(Check&, std::string&)> body;
  };
  const std::vector<Criterion> criteria = {
      {"prime trace reproduction", [](Check& c, std::string&) { prime_trace(c); }},
      {"prime correctness N=2..100", [](Check& c, std::string&) { prime_correctness(c); }},
      {"Turing tape examples", [](Check& c, std::string&) { turing(c); }},
      {"nondeterministic numeral parse", [](Check& c, std::string&) { nondeterminism(c); }},
      {"condition vector and completeness", [](Check& c, std::string&) { verification(c); }},
      {"closure computed two ways", [](Check& c, std::string&) { closure_theorems(c); }},
      {"Kleene-algebra laws", [](Check& c, std::string&) { kleene_laws(c); }},
      {"merge call counts", [](Check& c, std::string&) { merge_experiment(c); }},
      {"code generation", codegen},
      {"DSL round trip and diagnostics", [](Check& c, std::string&) { dsl(c); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    std::string note;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].body(check, note);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s (%.2f s)%s%s\n", check.passed() ? "PASS" : "FAIL", i + 1, criteria[i].title, secs,
                note.empty() ? "" : "; ", note.c_str());
    std::fflush(stdout);
    for (const auto& f : check.failures()) std::cerr << "  criterion " << (i + 1) << ": " << f << "\n";
    if (!check.passed()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
