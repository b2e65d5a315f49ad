#include <benchmark/benchmark.h>

#include "isosym/admissible.hpp"
#include "isosym/brackets.hpp"
#include "isosym/gallery.hpp"
#include "isosym/generators.hpp"
#include "isosym/lab.hpp"

using namespace isosym;

namespace {

WeightedOperator random_pair(Index dim) {
  Rng rng(dim);
  return WeightedOperator(rand_psd(dim, rng), rand_matrix(dim, rng));
}

void BM_ExpandOmega(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand(BracketKind::omega(k, k)));
}
BENCHMARK(BM_ExpandOmega)->Arg(2)->Arg(6)->Arg(12);

void BM_OmegaTable(benchmark::State& state) {
  const auto w = random_pair(state.range(0));
  const CoeffTable table = expand(BracketKind::omega(3, 3));
  for (auto _ : state) {
    BracketEngine engine(w);
    benchmark::DoNotOptimize(engine.evaluate(table));
  }
}
BENCHMARK(BM_OmegaTable)->Arg(4)->Arg(16)->Arg(64);

void BM_OmegaRecurrence(benchmark::State& state) {
  const auto w = random_pair(state.range(0));
  for (auto _ : state) {
    BracketEngine engine(w);
    benchmark::DoNotOptimize(engine.by_recurrence(3, 3, BracketTag::Omega));
  }
}
BENCHMARK(BM_OmegaRecurrence)->Arg(4)->Arg(16)->Arg(64);

void BM_SolveAdmissible(benchmark::State& state) {
  const Fixture f = fixture("ex1_3x3");
  for (auto _ : state) benchmark::DoNotOptimize(solve_admissible(f.op, 1, 1, 200, 7));
}
BENCHMARK(BM_SolveAdmissible);

void BM_VerifyAll(benchmark::State& state) {
  CheckOptions o;
  o.trials = 10;
  for (auto _ : state) benchmark::DoNotOptimize(run_all(o));
}
BENCHMARK(BM_VerifyAll)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
