#include "losmimo/beamforming.hpp"
#include "losmimo/channel.hpp"
#include "losmimo/geometry.hpp"
#include "losmimo/linalg.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace losmimo;

namespace {

constexpr double kLambda = 0.010707;
constexpr double kD = 50.0;

ComplexMatrix random_hermitian(std::size_t n) {
    std::mt19937_64 rng(n);
    std::normal_distribution<double> nd;
    ComplexMatrix a(n, n);
    for (auto &x : a.entries()) x = {nd(rng), nd(rng)};
    return a + a.adjoint();
}

struct Link {
    AntennaLayout tx, rx;
    ChannelParams p;
};

Link square_link(std::size_t n) {
    Link l;
    l.p.wavelength = kLambda;
    l.p.distance = kD;
    const SpacingSolution s = optimal_spacing(n, n, std::max<std::size_t>(2, n / 4), kLambda, kD);
    l.tx = build_layout({n, n, s.d_t, s.d_t}, Side::Tx, kD);
    l.rx = build_layout({n, n, s.d_r, s.d_r}, Side::Rx, kD);
    return l;
}

void BM_EigHermitian(benchmark::State &state) {
    const ComplexMatrix a = random_hermitian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(a));
}
BENCHMARK(BM_EigHermitian)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Svd(benchmark::State &state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Link l = square_link(n);
    const ComplexMatrix h = exact_channel(l.tx, l.rx, l.p);
    for (auto _ : state) benchmark::DoNotOptimize(svd(h));
}
BENCHMARK(BM_Svd)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FresnelFactors(benchmark::State &state) {
    const Link l = square_link(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fresnel_factors(l.tx, l.rx, l.p));
}
BENCHMARK(BM_FresnelFactors)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Omp(benchmark::State &state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Link l = square_link(n);
    const ComplexMatrix h = exact_channel(l.tx, l.rx, l.p);
    const DigitalBeamformer d = digital_svd(h, n);
    const ComplexMatrix dict = dictionary_tx(l.tx, l.p, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(omp_hybrid(d.precoder, dict, n));
}
BENCHMARK(BM_Omp)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
