// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

// Micro-benchmarks: serial reference engine against the OpenMP engine, and
// direct access lookup against binary search in a sorted ELT.
//
//   ara_bench --benchmark_filter=Engine
//   ARA_BENCH_TRIALS=20000 ara_bench

#include <benchmark/benchmark.h>

#include <cstdlib>
#include <memory>

#include "ara/datagen.hpp"
#include "ara/engine.hpp"
#include "ara/loss_store.hpp"

namespace {

using namespace ara;

// Standard workload shape with fewer trials, so a sweep finishes in seconds.
const Dataset& workload() {
  static const std::unique_ptr<Dataset> ds = [] {
    auto spec = standard_workload(7);
    if (const char* env = std::getenv("ARA_BENCH_TRIALS")) spec.trial_count = std::strtoull(env, nullptr, 10);
    else spec.trial_count = 4000;
    return std::make_unique<Dataset>(generate(spec));
  }();
  return *ds;
}

void set_counters(benchmark::State& state, const Dataset& ds) {
  const auto events = static_cast<double>(ds.yet.occurrence_count() * ds.layers.size());
  state.counters["events/s"] = benchmark::Counter(events, benchmark::Counter::kIsIterationInvariantRate);
}

void BM_EngineSerial(benchmark::State& state) {
  const auto& ds = workload();
  EngineConfig config;
  config.precision = state.range(0) ? Precision::kSingle : Precision::kDouble;
  for (auto _ : state) benchmark::DoNotOptimize(run_analysis_serial(ds, config));
  set_counters(state, ds);
}
BENCHMARK(BM_EngineSerial)->ArgName("single")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_EngineParallel(benchmark::State& state) {
  const auto& ds = workload();
  EngineConfig config;
  config.worker_count = static_cast<unsigned>(state.range(0));
  config.chunk_size = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_analysis(ds, config));
  set_counters(state, ds);
}
BENCHMARK(BM_EngineParallel)
    ->ArgNames({"workers", "chunk"})
    ->ArgsProduct({{1, 2, 4}, {256}})
    ->Args({1, 32})
    ->Args({1, 4096})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

// Lookups of one trial-sized batch of random ids against a single ELT.
struct LookupFixture {
  EventLossTable elt;
  std::vector<EventId> ids;

  explicit LookupFixture(std::uint32_t catalogue) {
    GenSpec spec;
    spec.catalogue_size = catalogue;
    spec.records_per_elt = 20'000;
    spec.elt_count = 1;
    spec.layer_count = 0;
    spec.elts_per_layer = 0;
    spec.trial_count = 0;
    elt = generate(spec).elts[0];
    SplitMix64 rng(3);
    ids.resize(1 << 16);
    for (auto& id : ids) id = EventId{static_cast<std::uint32_t>(rng.below(catalogue) + 1)};
  }
};

void BM_LookupDirect(benchmark::State& state) {
  const LookupFixture f(static_cast<std::uint32_t>(state.range(0)));
  const auto table = build_direct(f.elt, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    double sum = 0.0;
    for (auto id : f.ids) sum += table[id];
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.ids.size()));
  state.counters["table_bytes"] = static_cast<double>(memory_footprint(table));
}
BENCHMARK(BM_LookupDirect)->Arg(20'000)->Arg(200'000)->Arg(2'000'000);

void BM_LookupCompact(benchmark::State& state) {
  const LookupFixture f(static_cast<std::uint32_t>(state.range(0)));
  const auto table = build_compact(f.elt);
  for (auto _ : state) {
    double sum = 0.0;
    for (auto id : f.ids) sum += table.lookup(id);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.ids.size()));
  state.counters["table_bytes"] = static_cast<double>(memory_footprint(table));
}
BENCHMARK(BM_LookupCompact)->Arg(20'000)->Arg(200'000)->Arg(2'000'000);

}  // namespace

BENCHMARK_MAIN();
