#include <benchmark/benchmark.h>

#include <vector>

#include "qsim/campaign.hpp"
#include "qsim/simon.hpp"
#include "qsim/walsh.hpp"

namespace {

using namespace qsim;

std::vector<std::int64_t> wht_input(unsigned m) {
    SplitRng rng(7);
    std::vector<std::int64_t> v(std::size_t{1} << m);
    for (auto& x : v) x = static_cast<std::int64_t>(rng.bits(16)) - 32768;
    return v;
}

void BM_walsh_serial(benchmark::State& state) {
    const auto base = wht_input(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) {
        auto v = base;
        walsh_hadamard_serial(v);
        benchmark::DoNotOptimize(v.data());
    }
}
BENCHMARK(BM_walsh_serial)->Arg(16)->Arg(18)->Arg(20);

void BM_walsh_parallel(benchmark::State& state) {
    const auto base = wht_input(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) {
        auto v = base;
        walsh_hadamard(v);
        benchmark::DoNotOptimize(v.data());
    }
}
BENCHMARK(BM_walsh_parallel)->Arg(16)->Arg(18)->Arg(20);

void BM_spectral_serial(benchmark::State& state) {
    const unsigned m = static_cast<unsigned>(state.range(0));
    SplitRng rng(11);
    const TruthTable f = random_function(m, m, rng);
    for (auto _ : state) {
        auto d = simon::spectral_distribution_serial(f);
        benchmark::DoNotOptimize(d.probs.data());
    }
}
BENCHMARK(BM_spectral_serial)->Arg(10)->Arg(12);

void BM_spectral_parallel(benchmark::State& state) {
    const unsigned m = static_cast<unsigned>(state.range(0));
    SplitRng rng(11);
    const TruthTable f = random_function(m, m, rng);
    for (auto _ : state) {
        auto d = simon::spectral_distribution(f);
        benchmark::DoNotOptimize(d.probs.data());
    }
}
BENCHMARK(BM_spectral_parallel)->Arg(10)->Arg(12);

void BM_statevector_serial(benchmark::State& state) {
    const unsigned m = static_cast<unsigned>(state.range(0));
    SplitRng rng(13);
    const TruthTable f = random_function(m, m, rng);
    for (auto _ : state) {
        auto d = simon::statevector_distribution(f, /*use_threads=*/false);
        benchmark::DoNotOptimize(d.probs.data());
    }
}
BENCHMARK(BM_statevector_serial)->Arg(8)->Arg(9)->Arg(10);

void BM_statevector_parallel(benchmark::State& state) {
    const unsigned m = static_cast<unsigned>(state.range(0));
    SplitRng rng(13);
    const TruthTable f = random_function(m, m, rng);
    for (auto _ : state) {
        auto d = simon::statevector_distribution(f, /*use_threads=*/true);
        benchmark::DoNotOptimize(d.probs.data());
    }
}
BENCHMARK(BM_statevector_parallel)->Arg(8)->Arg(9)->Arg(10);

campaign::Config feistel_cfg(int threads) {
    campaign::Config cfg;
    cfg.experiment = campaign::Experiment::feistel_distinguish;
    cfg.n = 6;
    cfg.trials = 64;
    cfg.seed = 5;
    cfg.threads = threads;
    return cfg;
}

void BM_campaign_one_thread(benchmark::State& state) {
    const auto cfg = feistel_cfg(1);
    for (auto _ : state) {
        auto res = campaign::run_campaign(cfg);
        benchmark::DoNotOptimize(res.summary.correct);
    }
}
BENCHMARK(BM_campaign_one_thread)->Unit(benchmark::kMillisecond);

void BM_campaign_all_threads(benchmark::State& state) {
    const auto cfg = feistel_cfg(0);
    for (auto _ : state) {
        auto res = campaign::run_campaign(cfg);
        benchmark::DoNotOptimize(res.summary.correct);
    }
}
BENCHMARK(BM_campaign_all_threads)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
