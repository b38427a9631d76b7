#include <benchmark/benchmark.h>

#include "paramnet/analysis.hpp"
#include "paramnet/catalog.hpp"
#include "paramnet/scattering.hpp"

using namespace paramnet;

static void BM_Scattering4x4(benchmark::State& state) {
    const auto net = build_T(default_amp_params(100.0));
    const double kb = kappa_bar(net);
    double d = 0.0;
    for (auto _ : state) {
        d += 1e-4;
        benchmark::DoNotOptimize(scattering(net, d * kb));
    }
}
BENCHMARK(BM_Scattering4x4);

static void BM_Sweep801(benchmark::State& state) {
    const auto net = build_T(default_amp_params(100.0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep(net, -2.0, 2.0, 801));
}
BENCHMARK(BM_Sweep801);

static void BM_SynthesisRoundTrip(benchmark::State& state) {
    const auto net = build_C(default_amp_params(101.0));
    const auto sigma = damping_matrix(net);
    const auto s = scattering(net, 0.0);
    for (auto _ : state) {
        const auto m = synthesize_couplings(s, sigma);
        benchmark::DoNotOptimize(network_from_coupling_matrix(m, sigma, net.signature()));
    }
}
BENCHMARK(BM_SynthesisRoundTrip);

static void BM_Bandwidth(benchmark::State& state) {
    const auto net = build_T(default_amp_params(100.0));
    BandwidthCriteria crit;
    crit.g_fwd = 100.0;
    for (auto _ : state) benchmark::DoNotOptimize(bandwidth(net, crit));
}
BENCHMARK(BM_Bandwidth);

BENCHMARK_MAIN();
