#include <benchmark/benchmark.h>

#include "sdroots/curvature.hpp"
#include "sdroots/identities.hpp"
#include "sdroots/indicial.hpp"
#include "sdroots/oracle.hpp"

using namespace sdroots;

static void BM_SphereCatalog(benchmark::State& st) {
    const auto cs = CrossSectionSpec::sphere();
    for (auto _ : st) benchmark::DoNotOptimize(assemble_catalog(cs, int(st.range(0))));
}
BENCHMARK(BM_SphereCatalog)->Arg(10)->Arg(40);

static void BM_LensCatalog(benchmark::State& st) {
    const auto cs = CrossSectionSpec::sphere({5, 1, 2});
    for (auto _ : st) benchmark::DoNotOptimize(assemble_catalog(cs, 12));
}
BENCHMARK(BM_LensCatalog);

static void BM_TorusCatalog(benchmark::State& st) {
    const auto cs = CrossSectionSpec::torus({6.283185307179586, 4.0, 3.0});
    for (auto _ : st) benchmark::DoNotOptimize(assemble_catalog(cs, int(st.range(0))));
}
BENCHMARK(BM_TorusCatalog)->Arg(10)->Arg(40);

static void BM_MatrixARoots(benchmark::State& st) {
    const auto ode = matrixA(24.0, 1);
    for (auto _ : st) benchmark::DoNotOptimize(companion_clusters(ode));
}
BENCHMARK(BM_MatrixARoots);

static void BM_FlatModePencil(benchmark::State& st) {
    const std::array<double, 3> L{6.283185307179586, 6.283185307179586, 6.283185307179586};
    for (auto _ : st) benchmark::DoNotOptimize(companion_clusters(flat_mode_pencil({1, 2, 0}, L), 1e-6));
}
BENCHMARK(BM_FlatModePencil);

static void BM_FlatPencilSweep(benchmark::State& st) {
    const std::array<double, 3> L{6.283185307179586, 6.283185307179586, 6.283185307179586};
    for (auto _ : st) benchmark::DoNotOptimize(flat_pencil_sweep(L, 9));
}
BENCHMARK(BM_FlatPencilSweep)->Unit(benchmark::kMillisecond);

static void BM_IdentitySuite(benchmark::State& st) {
    IdentitySuiteConfig cfg;
    cfg.N = int(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(run_identity_suite(cfg));
}
BENCHMARK(BM_IdentitySuite)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_ChristoffelRiemann(benchmark::State& st) {
    const int n = int(st.range(0));
    auto m = MetricGrid4D::flat({n, n, n, n}, {6.283185307179586, 6.283185307179586, 6.283185307179586,
                                               6.283185307179586});
    for (std::size_t i = 0; i < m.g.size(); ++i) m.g[i][1] += 1e-3 * double(i % 7);  // break the symmetry a bit
    for (auto _ : st) benchmark::DoNotOptimize(christoffel_riemann(m));
}
BENCHMARK(BM_ChristoffelRiemann)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
