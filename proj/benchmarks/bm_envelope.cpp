#include <envkit/envkit.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

envkit::Signal noise(std::size_t n) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    std::vector<double> x(n);
    for (auto& v : x) v = g(rng);
    return envkit::Signal(std::move(x), 44100.0);
}

void BM_ThreeStep(benchmark::State& state) {
    const auto s = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(envkit::three_step_envelope(s, envkit::kComparisonThreeStep));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ThreeStep)->Arg(4410)->Arg(66150)->Arg(441000)->Arg(2646000)->Unit(benchmark::kMillisecond);

void BM_Follower(benchmark::State& state) {
    const auto s = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(envkit::envelope_follower(s, 150.0));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Follower)->Arg(66150)->Unit(benchmark::kMillisecond);

void BM_Rms(benchmark::State& state) {
    const auto s = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(envkit::envelope_rms(s, 50));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rms)->Arg(66150)->Unit(benchmark::kMillisecond);

void BM_Hilbert(benchmark::State& state) {
    const auto s = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(envkit::envelope_hilbert(s));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Hilbert)->Arg(66150)->Arg(65536)->Unit(benchmark::kMillisecond);

void BM_BunchMax(benchmark::State& state) {
    const auto s = envkit::rectify(noise(66150));
    const envkit::BunchSpec spec(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(envkit::bunch_max(s, spec));
}
BENCHMARK(BM_BunchMax)->Arg(1)->Arg(35)->Arg(200);

void BM_Design(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(envkit::butterworth_lowpass({order, 120.0, 44100.0}));
}
BENCHMARK(BM_Design)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

} // namespace
BENCHMARK_MAIN();
