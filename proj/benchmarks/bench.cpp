#include <benchmark/benchmark.h>

#include "regdecomp/regularity.hpp"
#include "regdecomp/seminorm.hpp"
#include "regdecomp/tensor.hpp"
#include "regdecomp/truncation.hpp"

namespace {

using namespace regdecomp;

void BM_ExactCutOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StepTensor a =
      random_ball_sample(2, n, 2.0, Measure::kProbability, 1);
  const SeminormFamily family = SeminormFamily::cut(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(family, a, Mode::Exact()));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ExactCutOracle)->DenseRange(6, 14, 2)->Complexity();

void BM_HeuristicCutOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StepTensor a =
      random_ball_sample(2, n, 2.0, Measure::kProbability, 1);
  const SeminormFamily family = SeminormFamily::cut(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        best_response(family, a, Mode::Heuristic(8, 1)));
  }
}
BENCHMARK(BM_HeuristicCutOracle)->RangeMultiplier(2)->Range(8, 64);

void BM_GreedyDecompose(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const StepTensor a =
      random_ball_sample(2, 8, 2.0, Measure::kProbability, 2);
  const SeminormFamily family = SeminormFamily::cut(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_decompose(a, family, k, Mode::Exact()));
  }
}
BENCHMARK(BM_GreedyDecompose)->Arg(4)->Arg(16)->Arg(64);

void BM_TopKSparsify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StepTensor x = random_ball_sample(1, n, 2.0, Measure::kCounting, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(top_k_sparsify(x, 2.0, 4.0, 0.25));
  }
}
BENCHMARK(BM_TopKSparsify)->RangeMultiplier(10)->Range(100, 100000);

}  // namespace

BENCHMARK_MAIN();
