#include <benchmark/benchmark.h>

#include <string>

#include "ilpbench/fixpoint.hpp"
#include "ilpbench/reader.hpp"
#include "ilpbench/scoring.hpp"
#include "ilpbench/synth.hpp"

using namespace ilpbench;

namespace {

// Transitive closure over a path of n edges.
static void BM_LeastModelTransitiveClosure(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  FactSet bk;
  for (int i = 0; i < n; ++i) bk.insert(ground_atom("e", {"n" + std::to_string(i), "n" + std::to_string(i + 1)}));
  const Program tc = parse_program("t(X,Y) :- e(X,Y).\nt(X,Z) :- e(X,Y), t(Y,Z).");
  for (auto _ : state) benchmark::DoNotOptimize(least_model(bk, tc).size());
  state.counters["facts"] = static_cast<double>(n * (n + 1) / 2);
}
BENCHMARK(BM_LeastModelTransitiveClosure)->Arg(16)->Arg(64)->Arg(128);

static void BM_ScoreGroundTruth(benchmark::State& state) {
  GenSpec spec;
  spec.category = static_cast<Category>(state.range(0));
  spec.seed = 3;
  const Dataset d = gen_dataset(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_theory(d.bk, d.truth.rules, d.train_pos, d.train_neg).f1);
  }
  state.SetLabel(std::string(category_name(spec.category)));
}
BENCHMARK(BM_ScoreGroundTruth)->DenseRange(0, 6);

static void BM_ParseProgram(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < state.range(0); ++i) {
    text += "p" + std::to_string(i % 12) + "(X0,X1) :- p" + std::to_string((i + 1) % 12) + "(X0,X2), p" +
            std::to_string((i + 5) % 12) + "(X2,X1).  % rule " + std::to_string(i) + "\n";
  }
  for (auto _ : state) benchmark::DoNotOptimize(parse_program(text).size());
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseProgram)->Arg(10)->Arg(1000);

static void BM_GenDataset(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    GenSpec spec;
    spec.category = Category::kDrdgRec;
    spec.noise = spec.missing = spec.owa = 0.2;
    spec.seed = seed++;
    benchmark::DoNotOptimize(gen_dataset(spec).bk.size());
  }
}
BENCHMARK(BM_GenDataset);

}  // namespace
BENCHMARK_MAIN();
