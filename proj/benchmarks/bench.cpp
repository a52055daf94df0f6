#include <benchmark/benchmark.h>

#include "lollipop/experiment.hpp"

using namespace lollipop;

namespace {

const WiringSnapshot& snap() {
    static WiringSnapshot s =
        WiringSnapshot::load(std::string(LOLLIPOP_REPO_DIR) + "/wiring.json");
    return s;
}

}  // namespace

static void BM_build(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        FamilyInstance inst = build(n, snap());
        benchmark::DoNotOptimize(inst.graph.n_edges());
    }
}
BENCHMARK(BM_build)->Arg(10)->Arg(30);

static void BM_cycle_dp(benchmark::State& state) {
    FamilyInstance inst = build(static_cast<int>(state.range(0)), snap());
    for (auto _ : state) {
        auto cycles = family_cycles(inst);
        benchmark::DoNotOptimize(cycles.size());
    }
}
BENCHMARK(BM_cycle_dp)->Arg(10)->Arg(30);

static void BM_walk(benchmark::State& state) {
    FamilyInstance inst = build(static_cast<int>(state.range(0)), snap());
    for (auto _ : state) {
        WalkTrace trace = run_thomason(inst);
        benchmark::DoNotOptimize(trace.steps);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<long long>(run_thomason(inst).steps));
}
BENCHMARK(BM_walk)->Arg(12)->Arg(20)->Arg(28);

static void BM_enumerate_language(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto words = enumerate_language(n);
        benchmark::DoNotOptimize(words.size());
    }
}
BENCHMARK(BM_enumerate_language)->Arg(10)->Arg(16);

static void BM_oracle_cycles(benchmark::State& state) {
    FamilyInstance inst = build(static_cast<int>(state.range(0)), snap());
    for (auto _ : state) {
        CycleSet cycles = enumerate_ham_cycles(inst.graph);
        benchmark::DoNotOptimize(cycles.size());
    }
}
BENCHMARK(BM_oracle_cycles)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
