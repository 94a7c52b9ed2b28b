#include <benchmark/benchmark.h>

#include "ltdps/eval.hpp"
#include "ltdps/miner.hpp"
#include "ltdps/mobility.hpp"
#include "ltdps/security.hpp"

namespace {

void BM_GenRegionPath(benchmark::State& state) {
    ltdps::GridTopology grid;
    ltdps::Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ltdps::gen_region_path(grid, 3, 6, rng));
    }
}
BENCHMARK(BM_GenRegionPath);

void BM_RecordPath(benchmark::State& state) {
    ltdps::GridTopology grid;
    ltdps::Rng rng(2);
    std::vector<ltdps::MobilePath> paths;
    for (int i = 0; i < 1000; ++i) paths.push_back(ltdps::gen_region_path(grid, 3, 6, rng));
    std::size_t i = 0;
    ltdps::PatternDatabase db;
    for (auto _ : state) {
        db.record_path(paths[i++ % paths.size()], grid);
    }
}
BENCHMARK(BM_RecordPath);

void BM_PredictNextAp(benchmark::State& state) {
    ltdps::GridTopology grid;
    ltdps::Rng rng(3);
    ltdps::PatternDatabase db;
    for (int i = 0; i < 10000; ++i) {
        db.record_path(ltdps::gen_region_path(grid, 3, 6, rng), grid);
    }
    const auto candidates = grid.candidate_next_aps(15, 19);
    const ltdps::ScoringConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ltdps::predict_next_ap(db, 15, candidates, cfg));
    }
}
BENCHMARK(BM_PredictNextAp);

void BM_RunExperiment(benchmark::State& state) {
    ltdps::ExperimentConfig cfg;
    cfg.history_size = static_cast<int>(state.range(0));
    cfg.test_paths = 10;
    for (auto _ : state) {
        cfg.seed += 1;
        benchmark::DoNotOptimize(ltdps::run_experiment(cfg));
    }
}
BENCHMARK(BM_RunExperiment)->Arg(1000)->Arg(10000);

void BM_ComputeMic(benchmark::State& state) {
    const ltdps::SharedKey key = ltdps::SharedKey::from_hex("0f1e2d3c4b5a6978");
    const auto cipher = ltdps::make_default_cipher(key);
    ltdps::Rng rng(4);
    ltdps::Bytes message(static_cast<std::size_t>(state.range(0)));
    for (auto& b : message) b = rng.byte();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ltdps::compute_mic(message, *cipher));
    }
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ComputeMic)->Arg(64)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
