// Serial against OpenMP flavours of the corpus-wide kernels.
#include <benchmark/benchmark.h>

#include "stochalc/corpus.hpp"
#include "stochalc/parallel.hpp"

using namespace stochalc;

namespace {

const std::vector<Capsule>& corpus() {
  static const std::vector<Capsule> c = [] {
    CorpusSpec spec;
    spec.count = 100;
    return generate_corpus(spec);
  }();
  return c;
}

par::Exec exec(const benchmark::State& state) { return state.range(0) == 0 ? par::Exec::Serial : par::Exec::Parallel; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(par::threads()));
}

void BM_TreeEquivalence(benchmark::State& state) {
  for (auto _ : state) {
    auto t = par::tree_equivalence(corpus(), 2, 2024, Fuel{20000}, Split::Adequacy, exec(state));
    benchmark::DoNotOptimize(t.agreed);
  }
  label(state);
}

void BM_Adequacy(benchmark::State& state) {
  for (auto _ : state) {
    auto t = par::adequacy(corpus(), 2, 2024, Fuel{20000}, Fuel{2000}, 2, Split::Adequacy, exec(state));
    benchmark::DoNotOptimize(t.values);
  }
  label(state);
}

void BM_Measure(benchmark::State& state) {
  TossingProcess t = builtin("proj0");
  for (auto _ : state) {
    auto r = par::verify_measure(t, 7, 21, exec(state));
    benchmark::DoNotOptimize(r.entries.size());
  }
  label(state);
}

void BM_FunLam(benchmark::State& state) {
  for (auto _ : state) {
    auto r = par::funlam(2, 2, exec(state));
    benchmark::DoNotOptimize(r.points);
  }
  label(state);
}

void BM_Sampling(benchmark::State& state) {
  const Capsule& c = corpus()[12];
  for (auto _ : state) {
    auto e = par::sample_distribution(c, 20000, 7, Fuel{5000}, Split::Adequacy, exec(state));
    benchmark::DoNotOptimize(e.samples);
  }
  label(state);
}

}  // namespace

BENCHMARK(BM_TreeEquivalence)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Adequacy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Measure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FunLam)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Sampling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
