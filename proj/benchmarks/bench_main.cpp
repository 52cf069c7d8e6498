#include "qfl/counterexample.hpp"

#include <benchmark/benchmark.h>

using namespace qfl;

namespace {

FiniteQuantale chain_by_index(std::int64_t i) { return FiniteQuantale::shipped_chains().at(static_cast<std::size_t>(i)); }

void BM_Enumerate(benchmark::State& state) {
    const FiniteQuantale q = chain_by_index(state.range(0));
    const auto space = FunctionSpace::make(q, static_cast<std::size_t>(state.range(1)));
    std::size_t count = 0;
    for (auto _ : state) {
        auto all = enumerate_semifilters(space, Requirement::All);
        count = all.size();
        benchmark::DoNotOptimize(all);
    }
    state.SetLabel(q.name());
    state.counters["semifilters"] = static_cast<double>(count);
}
BENCHMARK(BM_Enumerate)->ArgsProduct({{0, 1, 2, 3}, {1, 2}})->Unit(benchmark::kMillisecond);

void BM_ConicalModes(benchmark::State& state) {
    const auto space = FunctionSpace::make(FiniteQuantale::mv3(), 2);
    const auto all = enumerate_semifilters(space, Requirement::All);
    const auto mode = static_cast<ConicalMode>(state.range(0));
    for (auto _ : state)
        for (const SemifilterTable& t : all) benchmark::DoNotOptimize(is_conical(t, mode));
    state.SetLabel(std::string(to_string(mode)));
}
BENCHMARK(BM_ConicalModes)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_MonadLaws(benchmark::State& state) {
    const FiniteQuantale q = chain_by_index(state.range(0));
    LawConfig config;
    config.scenarios = 50;
    config.workers = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(check_monad_laws(q, config));
    state.SetLabel(q.name());
}
BENCHMARK(BM_MonadLaws)->ArgsProduct({{1, 2, 3}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Counterexample(benchmark::State& state) {
    CounterexampleParams p;
    p.tnorm = TNorm::build({{rat(1, 4), rat(1, 2), BlockKind::Lukasiewicz}});
    p.truncation = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_counterexample(p));
}
BENCHMARK(BM_Counterexample)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
