#include "blowup/cones.hpp"
#include "blowup/fatpoints.hpp"
#include "blowup/lattice.hpp"
#include "blowup/seshadri.hpp"

#include <benchmark/benchmark.h>

using namespace blowup;

static void BM_EpsilonGeneric(benchmark::State& st) {
    auto tag = ConfigurationTag::parse("generic", static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(epsilon_exact(tag));
}
BENCHMARK(BM_EpsilonGeneric)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ConeGenerators(benchmark::State& st) {
    auto tag = ConfigurationTag::parse("collinear", static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(cone_generators(tag));
}
BENCHMARK(BM_ConeGenerators)->Arg(4)->Arg(7)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_UnloadingBound(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(epsilon_lower_unloading(st.range(0), 60));
}
BENCHMARK(BM_UnloadingBound)->Arg(10)->Arg(21)->Arg(50);

static void BM_ProveNefR12(benchmark::State& st) {
    ProveNefOptions o;
    o.spanning_nef = anticanonical_spanning_nef(12, 4);
    o.box.mode = BoxMode::relaxed;
    o.box.s = st.range(0);
    auto F = DivisorClass::uniform(12, 7, 2);
    for (auto _ : st) benchmark::DoNotOptimize(prove_nef(F, 12, {}, o));
}
BENCHMARK(BM_ProveNefR12)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_NagataSearch(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(nagata_search(10, st.range(0)));
}
BENCHMARK(BM_NagataSearch)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_SymbolicDim(benchmark::State& st) {
    auto z = FatPointScheme::random(2, 2147483647, 6, std::vector<long>(6, 1), 1);
    for (auto _ : st) {
        FatPointIdeal I(z);
        benchmark::DoNotOptimize(I.symbolic_dim(st.range(0), 3 * st.range(0)));
    }
}
BENCHMARK(BM_SymbolicDim)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Containment(benchmark::State& st) {
    auto z = FatPointScheme::random(2, 2147483647, 5, std::vector<long>(5, 1), 3);
    for (auto _ : st) {
        FatPointIdeal I(z);
        benchmark::DoNotOptimize(I.contains_symbolic_in_power(2 * st.range(0), st.range(0)));
    }
}
BENCHMARK(BM_Containment)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
