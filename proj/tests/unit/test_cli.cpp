#include <algorithm>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "matrixcode/dsl.hpp"
#include "support.hpp"

using namespace mxc;
using namespace mxc::testing;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "matrixcode");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("run prints the trace and maps outcomes to exit codes") {
  const auto ok = invoke({"run", corpus_path("primes.mxc"), "--input", "N=3"});
  CHECK(ok.code == 0);
  CHECK(ok.out == slurp(golden_path("primes_run_N3.txt")));
  CHECK(invoke({"run", corpus_path("primes0.mxc"), "--input", "N=3"}).code == 1);
  CHECK(invoke({"run", corpus_path("primes.mxc"), "--input", "N=3", "--steps", "2"}).code == 2);
  const auto bad = invoke({"run", corpus_path("primes.mxc"), "--input", "N=x"});
  CHECK(bad.code == 3);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("run falls back to the sample inputs") {
  const auto r = invoke({"run", corpus_path("turing.mxc")});
  CHECK(r.code == 0);
  CHECK(r.out.find("A ( 0 X X X X X X X X A") != std::string::npos);
}

TEST_CASE("enumerate lists the numeral machine's computations") {
  const auto r = invoke({"enumerate", corpus_path("decnum.mxc"), "--input", "left=\"-123\""});
  CHECK(r.code == 0);
  CHECK(r.out.find("3 successful of 5 computations found") != std::string::npos);
  CHECK(invoke({"run", corpus_path("decnum.mxc"), "--mode", "all"}).out == r.out);
}

TEST_CASE("verify exit codes") {
  CHECK(invoke({"verify", corpus_path("primes.mxc"), "--domain", "N=2..3"}).code == 0);
  const auto p1 = invoke({"verify", corpus_path("primes1.mxc"), "-d", "N=2..3"});
  CHECK(p1.code == 1);
  CHECK(p1.out.find("vector holds: 2 of 2 cells hold") != std::string::npos);
  CHECK(p1.out.find("column A is incomplete") != std::string::npos);
  const auto bad = invoke({"verify", fixture_path("corrupted-primes.mxc"), "-d", "N=2..3"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("{B} [p[n] * p[n] > j]; { k = k + 1; } {A}  FAILS") != std::string::npos);
  CHECK(invoke({"verify", corpus_path("emerge.mxc")}).code == 3);
  CHECK(invoke({"verify", corpus_path("primes.mxc"), "-d", "Q=1..2"}).code == 3);
}

TEST_CASE("compile writes C or lists findings") {
  const auto ok = invoke({"compile", corpus_path("mrg2.mxc")});
  CHECK(ok.code == 0);
  CHECK(ok.out == slurp(golden_path("mrg2.c")));
  const auto named = invoke({"compile", corpus_path("mrg2.mxc"), "--name", "merge"});
  CHECK(named.out.find("void merge(mc_trinity *io)") != std::string::npos);
  const auto bad = invoke({"compile", fixture_path("untranslatable.mxc")});
  CHECK(bad.code == 1);
  CHECK(bad.err == "column S: rules 1 and 2 overlap, e.g. at x=1\n");
}

TEST_CASE("identities and closure") {
  const auto id = invoke({"identities", "--trials", "50", "--seed", "7"});
  CHECK(id.code == 0);
  CHECK(id.out.find("all standard laws hold; printed variants refuted") != std::string::npos);
  const auto cl = invoke({"closure", fixture_path("tiny.mxc")});
  CHECK(cl.code == 0);
  CHECK(cl.out.find("both paths agree: 1 pair\n") != std::string::npos);
}

TEST_CASE("bench-merge prints two rows per pair") {
  const auto r = invoke({"bench-merge", "--pairs", "4", "--seed", "1"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header, line;
  std::getline(in, header);
  CHECK(header.find("getL") != std::string::npos);
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string pair, program;
    long ll, lr, gl, gr, pl, pr;
    fields >> pair >> program >> ll >> lr >> gl >> gr >> pl >> pr;
    if (program == "mMerge") {
      CHECK(gl <= pl + 2);
      CHECK(gr <= pr + 2);
    }
    ++rows;
  }
  CHECK(rows == 8);
}

TEST_CASE("render and usage errors") {
  CHECK(invoke({"render", corpus_path("primes.mxc")}).out == slurp(golden_path("primes_table.txt")));
  const auto src = invoke({"render", corpus_path("decnum.mxc"), "--source"});
  CHECK(src.code == 0);
  CHECK(parse_program(src.out).ok());
  CHECK(invoke({"render", corpus_path("primes.mxc"), "--bogus"}).code == 3);
  CHECK(invoke({}).code == 3);
  CHECK(invoke({"render", "/nonexistent.mxc"}).code == 3);
  const auto syn = invoke({"render", fixture_path("err-syntax.mxc")});
  CHECK(syn.code == 3);
  CHECK(syn.err.find("err-syntax.mxc:6:21: error: expected an expression") != std::string::npos);
}

TEST_CASE("random stream pairs follow the documented shape") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto p = cli::random_stream_pair(rng);
    for (const Stream* s : {&p.left, &p.right}) {
      CHECK(s->items.size() <= 50);
      std::int64_t prev = 0;
      for (auto v : s->items) {
        CHECK(v - prev >= 1);
        CHECK(v - prev <= 9);
        prev = v;
      }
    }
  }
}
