// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include <omp.h>

#include <chrono>

#include "ara/engine.hpp"
#include "ara/trial_kernel.hpp"

namespace ara {
namespace {

using Seconds = PhaseTimings::Duration;

template <typename Real, bool Instrumented>
void simulate(const Dataset& dataset, const LossStoreSet<Real>& stores, const EngineConfig& config,
              YearLossTable& ylt, std::vector<PhaseClock>& clocks) {
  const auto ranges = partition_trials(dataset.yet.trial_count(), config.worker_count);
  const auto range_count = static_cast<std::ptrdiff_t>(ranges.size());
  const std::size_t layer_count = dataset.layers.size();

#pragma omp parallel num_threads(config.worker_count)
  {
    TrialWorkspace<Real> ws;
    PhaseClock local;
    for (std::size_t a = 0; a < layer_count; ++a) {
      const auto& layer = stores.layer(a);
      auto row = ylt.row(a);
      // One range per worker; rows are written at disjoint trial offsets.
#pragma omp for schedule(static, 1)
      for (std::ptrdiff_t w = 0; w < range_count; ++w) {
        const auto range = ranges[static_cast<std::size_t>(w)];
        for (std::size_t b = range.begin; b < range.end; ++b) {
          row[b] = static_cast<double>(
              run_trial<Real, Instrumented>(dataset.yet.trial(b), layer, ws, config.chunk_size, &local));
        }
      }
    }
    if constexpr (Instrumented) clocks[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
}

PhaseTimings average(const std::vector<PhaseClock>& clocks, unsigned workers) {
  PhaseClock sum;
  for (const auto& c : clocks) sum += c;
  const double n = static_cast<double>(workers);
  PhaseTimings t;
  t.fetch_events = std::chrono::duration_cast<Seconds>(sum.fetch_events) / n;
  t.loss_lookup = std::chrono::duration_cast<Seconds>(sum.loss_lookup) / n;
  t.financial_terms = std::chrono::duration_cast<Seconds>(sum.financial_terms) / n;
  t.occurrence_terms = std::chrono::duration_cast<Seconds>(sum.occurrence_terms) / n;
  t.aggregate_terms = std::chrono::duration_cast<Seconds>(sum.aggregate_terms) / n;
  return t;
}

template <typename Real>
AnalysisResult run(const Dataset& dataset, const EngineConfig& config) {
  LossStoreSet<Real> stores(dataset);
  std::vector<std::uint32_t> ids;
  ids.reserve(dataset.layers.size());
  for (const auto& layer : dataset.layers) ids.push_back(layer.id);
  AnalysisResult result{YearLossTable(std::move(ids), dataset.yet.trial_count()), {}};

  std::vector<PhaseClock> clocks(config.worker_count);
  const auto start = std::chrono::steady_clock::now();
  if (config.instrumented) {
    simulate<Real, true>(dataset, stores, config, result.ylt, clocks);
  } else {
    simulate<Real, false>(dataset, stores, config, result.ylt, clocks);
  }
  const auto total = std::chrono::steady_clock::now() - start;

  if (config.instrumented) result.timings = average(clocks, config.worker_count);
  result.timings.total = std::chrono::duration_cast<Seconds>(total);
  return result;
}

}  // namespace

AnalysisResult run_analysis(const Dataset& dataset, const EngineConfig& config) {
  check_config(config);
  if (auto report = validate_dataset(dataset); !report.empty()) throw ValidationError(std::move(report));
  return config.precision == Precision::kSingle ? run<float>(dataset, config) : run<double>(dataset, config);
}

}  // namespace ara
