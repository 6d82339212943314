#include <benchmark/benchmark.h>

#include <cmath>

#include "levyhunt/hunt.hpp"
#include "levyhunt/rng.hpp"
#include "levyhunt/simulate.hpp"

using namespace levyhunt;

namespace {

LevyTriplet atomic_2d() {
    AtomicMeasure am;
    am.atoms = {{{0.4, 0.1}, 1.0}, {{-1.3, 0.7}, 0.5}, {{0.0, 2.0}, 0.8}};
    Mat A(2, 2);
    A(0, 0) = 1.0;
    A(0, 1) = A(1, 0) = 0.3;
    A(1, 1) = 0.5;
    return LevyTriplet({0.2, -0.4}, A, am);
}

LevyTriplet radial_2d() {
    return LevyTriplet({0.0, 0.0}, Mat::identity(2),
                       RadialPowerMeasure::isotropic(2, 0.7, 1.0, 1.0));
}

void BM_exponent_atomic(benchmark::State& state) {
    const LevyTriplet t = atomic_2d();
    const Vec z{3.7, -1.2};
    for (auto _ : state) benchmark::DoNotOptimize(t.exponent(z));
}
BENCHMARK(BM_exponent_atomic);

void BM_exponent_radial(benchmark::State& state) {
    const LevyTriplet t = radial_2d();
    const double r = std::pow(10.0, state.range(0));
    const Vec z{0.6 * r, 0.8 * r};
    for (auto _ : state) benchmark::DoNotOptimize(t.exponent(z));
}
BENCHMARK(BM_exponent_radial)->Arg(0)->Arg(2)->Arg(4)->Arg(8);

void BM_decompose(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    CounterRng rng(77, 0);
    Mat g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
    Mat a = g.transposed() * g;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = v;
        }
    for (auto _ : state) benchmark::DoNotOptimize(decompose(a));
}
BENCHMARK(BM_decompose)->Arg(4)->Arg(8)->Arg(16);

void BM_decide_H(benchmark::State& state) {
    const LevyTriplet t = atomic_2d();
    for (auto _ : state) benchmark::DoNotOptimize(decide_H(t));
}
BENCHMARK(BM_decide_H);

void BM_kesten_gaussian(benchmark::State& state) {
    const LevyTriplet t({0.0}, Mat::identity(1), NoJumps{});
    for (auto _ : state) benchmark::DoNotOptimize(kesten(t));
}
BENCHMARK(BM_kesten_gaussian);

void BM_sample_paths(benchmark::State& state) {
    const LevyTriplet t = atomic_2d();
    SimConfig cfg;
    cfg.n_paths = state.range(0);
    cfg.t_max = 1.0;
    cfg.dt = 0.01;
    cfg.master_seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(sample_paths(t, cfg, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_sample_paths)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
