// Serial reference kernels against their OpenMP counterparts.
// Arg 0 selects the serial path, 1 the parallel one.

#include <benchmark/benchmark.h>

#include "gromov/chaos.hpp"
#include "gromov/constructions.hpp"
#include "gromov/enumeration.hpp"
#include "gromov/symmetry.hpp"

using namespace gromov;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_PointedClassCount(benchmark::State& state) {
    const auto line = champernowne_line(ChampernowneOrder::standard);
    const auto window = ball(line, "0", 60).graph.keys();
    for (auto _ : state)
        benchmark::DoNotOptimize(pointed_class_count(line, window, 4, Rational(1, 4), mode(state)));
    label(state);
}

void BM_EnumerateAperiodic(benchmark::State& state) {
    const EnumerationSpec spec{8, 6, std::nullopt, DegreeConstraint::none, false};
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_aperiodic(spec, mode(state)));
    label(state);
}

void BM_FindMatchingVertex(benchmark::State& state) {
    const Pointed x{universal_dense_graph(6), "a0.0"};
    const auto k = build_K(x, 2, Color(), 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(find_matching_vertex(x, Pointed::at_root(k.graph), 1, 2, 200, mode(state)));
    label(state);
}

void BM_GenerateAlmostChaotic(benchmark::State& state) {
    const ChaosSource source{Pointed{universal_dense_graph(6), "a0.0"}, std::nullopt, 6};
    CertifyOptions options;
    options.search_radius = 200;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_almost_chaotic(source, 3, 3, options, mode(state)));
    label(state);
}

}  // namespace

BENCHMARK(BM_PointedClassCount)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnumerateAperiodic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FindMatchingVertex)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GenerateAlmostChaotic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
