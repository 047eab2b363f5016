// SPDX-License-Identifier: MIT
#include "stackel/catalog.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

void BM_FamilyResidual(benchmark::State& state) {
    const stackel::AssembledMetric m = stackel::catalog(static_cast<int>(state.range(0)));
    const stackel::TauGrid grid = m.default_grid(50);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            stackel::einstein_residual(m.provider(), m.cosmological_constant(), grid));
    }
}
BENCHMARK(BM_FamilyResidual)->DenseRange(1, 10);

void BM_FamilyResidualFiniteDifference(benchmark::State& state) {
    const stackel::AssembledMetric m = stackel::catalog(1);
    const stackel::TauGrid grid = m.default_grid(50);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stackel::einstein_residual(m.provider(), m.cosmological_constant(),
                                                            grid, stackel::RicciPath::finite_difference));
    }
}
BENCHMARK(BM_FamilyResidualFiniteDifference);

void BM_Classify(benchmark::State& state) {
    stackel::Mat3 c;
    c << 0.3, 1.2, -0.4, 0.8, -0.5, 0.9, 0.1, 0.7, 1.1;
    const stackel::StructureMatrix sm(c);
    for (auto _ : state) benchmark::DoNotOptimize(stackel::classify(sm));
}
BENCHMARK(BM_Classify);

void BM_Rk4Eta(benchmark::State& state) {
    const stackel::SpatialSolution s(stackel::RotationParams{0.4, 1.1, 1.0, 1}, {});
    const stackel::Mat3 cm = s.structure();
    const int steps = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(stackel::rk4_integrate<stackel::Mat3>(
            [&cm](double, const stackel::Mat3& y) { return stackel::Mat3(cm * y); }, s.eta(0.2),
            0.2, 2.0, steps));
    }
}
BENCHMARK(BM_Rk4Eta)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
