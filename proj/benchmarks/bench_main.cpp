#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "glab/estimators.hpp"
#include "glab/random.hpp"

namespace {

using namespace glab;

std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0);
    std::normal_distribution<double> g;
    std::vector<double> f(n);
    for (auto& x : f) x = g(rng);
    return f;
}

SeqNorm sqrt_lorentz(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = 1.0 / std::sqrt(k + 1.0);
    return SeqNorm::lorentz(1.0, Weight(std::move(w)));
}

void BM_LorentzNorm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const SeqNorm s = sqrt_lorentz(n);
    const auto f = gaussian(n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(s.eval(f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LorentzNorm)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();

void BM_LorentzNormBlockConstant(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const SeqNorm s = sqrt_lorentz(n);
    std::vector<std::size_t> sizes{1};
    for (std::size_t b = 1; b < n; b *= 2) sizes.push_back(b);
    const auto v = gaussian(sizes.size(), 2);
    for (auto _ : state) benchmark::DoNotOptimize(s.eval_runs(v, sizes));
}
BENCHMARK(BM_LorentzNormBlockConstant)->RangeMultiplier(4)->Range(1 << 8, 1 << 16);

void BM_DkkNorm(benchmark::State& state) {
    const auto levels = static_cast<std::size_t>(state.range(0));
    const Construction c = build_thmA(SeqNorm::lp(2.0, 1), levels);
    const auto f = gaussian(c.basis.dim(), 3);
    for (auto _ : state) benchmark::DoNotOptimize(c.space->norm(std::span<const double>(f)));
    state.counters["dim"] = static_cast<double>(c.basis.dim());
}
BENCHMARK(BM_DkkNorm)->DenseRange(6, 12, 2);

void BM_BuildMainA(benchmark::State& state) {
    const auto levels = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_mainA(SeqNorm::lp(2.0, 1), levels).basis.dim());
}
BENCHMARK(BM_BuildMainA)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_KmExactHilbert(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng = make_rng(4, 0);
    std::normal_distribution<double> g;
    Mat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (auto& x : m.reshaped()) x = g(rng);
    const Basis b = Basis::from_synthesis(std::make_shared<SequenceSpace>(SeqNorm::lp(2.0, n)), m);
    for (auto _ : state) benchmark::DoNotOptimize(km_exact_hilbert(b, n / 2).value);
}
BENCHMARK(BM_KmExactHilbert)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_ProjectionCheck(benchmark::State& state) {
    const std::size_t n = std::size_t{1} << 14;
    std::vector<std::size_t> sizes{1};
    for (std::size_t s = 1; s < n; s *= 2) sizes.push_back(s);
    const OrderedPartition sigma(sizes);
    const std::vector<SeqNorm> hosts{SeqNorm::lp(1.0, n), SeqNorm::lp(2.0, n), sqrt_lorentz(n)};
    for (auto _ : state) benchmark::DoNotOptimize(projection_norm_bound_check(sigma, hosts, static_cast<int>(state.range(0)), 5));
}
BENCHMARK(BM_ProjectionCheck)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
