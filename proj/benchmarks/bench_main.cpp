#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cli.hpp"
#include "matrixcode/codegen.hpp"
#include "matrixcode/dsl.hpp"
#include "matrixcode/interpreter.hpp"
#include "matrixcode/kleene.hpp"
#include "matrixcode/verifier.hpp"

namespace {

using namespace mxc;

Program load(const std::string& name) {
  std::ifstream in(std::string(MATRIXCODE_CORPUS_DIR) + "/" + name + ".mxc");
  std::stringstream ss;
  ss << in.rdbuf();
  ParseResult r = parse_program(ss.str());
  if (!r.ok()) throw std::runtime_error("cannot load " + name);
  return std::move(*r.program);
}

Program from_source(const char* text) {
  ParseResult r = parse_program(text);
  if (!r.ok()) throw std::runtime_error("cannot parse merge source");
  return std::move(*r.program);
}

DataState bind(const Program& p, const std::vector<std::string>& bindings) {
  return make_state(p.matrix.schema, parse_bindings(bindings, p.matrix.schema));
}

void BM_ParsePrimes(benchmark::State& state) {
  std::ifstream in(std::string(MATRIXCODE_CORPUS_DIR) + "/primes.mxc");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  for (auto _ : state) benchmark::DoNotOptimize(parse_program(text));
}
BENCHMARK(BM_ParsePrimes);

void BM_RunPrimes(benchmark::State& state) {
  const Program p = load("primes");
  const DataState d = bind(p, {"N=" + std::to_string(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(run(p.matrix, d));
}
BENCHMARK(BM_RunPrimes)->Arg(10)->Arg(50)->Arg(100);

void BM_RunTuring(benchmark::State& state) {
  const Program p = load("turing");
  const DataState d = make_state(p.matrix.schema, {{"t", parse_literal(R"(tape("A ( ( ( ( ( ) ) ) ( ) ) ) A", 1))")}});
  for (auto _ : state) benchmark::DoNotOptimize(run(p.matrix, d));
}
BENCHMARK(BM_RunTuring);

void BM_EnumerateNumeral(benchmark::State& state) {
  const Program p = load("decnum");
  const DataState d = bind(p, {"left=\"-123456\""});
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(p.matrix, d, 100));
}
BENCHMARK(BM_EnumerateNumeral);

void BM_Merge(benchmark::State& state) {
  const Program p = from_source(state.range(0) == 0 ? cli::emerge_source() : cli::mmerge_source());
  std::mt19937_64 rng(1);
  const cli::StreamPair pair = cli::random_stream_pair(rng);
  for (auto _ : state) benchmark::DoNotOptimize(cli::run_merge(p.matrix, pair));
  state.SetLabel(state.range(0) == 0 ? "eMerge" : "mMerge");
}
BENCHMARK(BM_Merge)->Arg(0)->Arg(1);

void BM_CheckVectorMerge(benchmark::State& state) {
  const Program p = load("mrg2");
  for (auto _ : state) benchmark::DoNotOptimize(check_vector(*p.conditions, p.matrix, *p.domain));
}
BENCHMARK(BM_CheckVectorMerge)->Unit(benchmark::kMillisecond);

void BM_CompletenessMerge(benchmark::State& state) {
  const Program p = load("mrg2");
  for (auto _ : state) benchmark::DoNotOptimize(completeness(p.matrix, *p.conditions, *p.domain));
}
BENCHMARK(BM_CompletenessMerge)->Unit(benchmark::kMillisecond);

void BM_RelationClosure(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto r = random_relation(rng, static_cast<std::size_t>(state.range(0)), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(closure(r));
}
BENCHMARK(BM_RelationClosure)->Arg(16)->Arg(64)->Arg(256);

void BM_MatrixStar(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto table = random_table(rng, static_cast<std::size_t>(state.range(0)), 8, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_star(table));
}
BENCHMARK(BM_MatrixStar)->Arg(3)->Arg(6);

void BM_FsmLanguage(benchmark::State& state) {
  const FSM f = decimal_fsm();
  for (auto _ : state) benchmark::DoNotOptimize(fsm_language(f, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_FsmLanguage)->Arg(2)->Arg(3);

void BM_EmitPrimes(benchmark::State& state) {
  const Program p = load("primes");
  for (auto _ : state) benchmark::DoNotOptimize(emit(p.matrix, "primes"));
}
BENCHMARK(BM_EmitPrimes);

}  // namespace
BENCHMARK_MAIN();
