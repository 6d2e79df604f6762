#include "chiral_berry/berry.hpp"
#include "chiral_berry/molecule.hpp"
#include "chiral_berry/pumpprobe.hpp"

#include <benchmark/benchmark.h>

using namespace chiral_berry;

static void BM_GramTensor(benchmark::State& state)
{
    const int l_max = static_cast<int>(state.range(0));
    const auto model = models::random_harmonic(1, l_max);
    const auto rule = default_rule(l_max);
    for (auto _ : state) benchmark::DoNotOptimize(gram_tensor(model, rule));
    state.counters["nodes"] = static_cast<double>(rule.size());
}
BENCHMARK(BM_GramTensor)->DenseRange(0, 8, 2);

static void BM_CurvatureGrid(benchmark::State& state)
{
    const BerryGeometry geom(models::chiral_demo(), default_rule(2));
    const auto axes = make_grid_axes({static_cast<int>(state.range(0)), 2 * static_cast<int>(state.range(0))});
    for (auto _ : state) {
        Complex acc = 0;
        for (double t : axes.theta)
            for (double p : axes.phi) acc += geom.curvature_density({t, p}, 1);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_CurvatureGrid)->Arg(32)->Arg(128);

static void BM_LoopPhase(benchmark::State& state)
{
    const BerryGeometry geom(models::chiral_demo(), default_rule(2));
    const auto loop = LoopPath::latitude_circle(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(geom.loop_phase(loop, 1));
}
BENCHMARK(BM_LoopPhase)->Arg(256)->Arg(4096);

static void BM_StokesAnnulus(benchmark::State& state)
{
    const BerryGeometry geom(models::chiral_demo(), default_rule(2));
    for (auto _ : state) benchmark::DoNotOptimize(geom.stokes_check(0.785, 1.571, 1));
}
BENCHMARK(BM_StokesAnnulus);

static void BM_PumpProbeBlocks(benchmark::State& state)
{
    const TwoPhotonAmplitudeModel model{models::chiral_demo(), ComplexVec3{0.3, 0.1, 1.0}, FieldOrdering::linear_first};
    const PumpProbeGeometry geom(model, default_rule(2), 1.0);
    const auto cfg = make_two_field({1.0, 0.7}, 1, 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(geom.curvature_blocks(cfg));
}
BENCHMARK(BM_PumpProbeBlocks);

BENCHMARK_MAIN();
