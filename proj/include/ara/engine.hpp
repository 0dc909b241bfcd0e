// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ara/model.hpp"

namespace ara {

enum class Precision { kDouble, kSingle };

std::string_view to_string(Precision p) noexcept;

struct EngineConfig {
  unsigned worker_count = 1;
  std::size_t chunk_size = 256;  // events per block
  Precision precision = Precision::kDouble;
  bool instrumented = false;
};

/// Throws std::invalid_argument when worker_count or chunk_size is zero.
void check_config(const EngineConfig& config);

/// Wall-clock attribution of one analysis run.
///
/// The five phase fields are per-worker averages of the time each worker spent
/// in that activity, so their sum never exceeds `total`. `total` is the
/// wall-clock time of the simulation stage (table construction excluded).
struct PhaseTimings {
  using Duration = std::chrono::duration<double>;

  Duration fetch_events{0};
  Duration loss_lookup{0};
  Duration financial_terms{0};
  Duration occurrence_terms{0};
  Duration aggregate_terms{0};
  Duration total{0};

  Duration accounted() const noexcept {
    return fetch_events + loss_lookup + financial_terms + occurrence_terms + aggregate_terms;
  }
  Duration orchestration() const noexcept { return total - accounted(); }
};

struct AnalysisResult {
  YearLossTable ylt;
  PhaseTimings timings;
};

// Per-event term application, double precision. Each result is >= 0.

/// min(max(raw * rate - retention, 0), limit); the cap is skipped when the
/// limit is absent.
double apply_financial_terms(double raw_loss, const FinancialTerms& terms) noexcept;

/// min(max(loss - occ_retention, 0), occ_limit).
double apply_occurrence_terms(double event_loss, const LayerTerms& terms) noexcept;

/// Turns a trial's occurrence-capped losses into per-event incremental
/// aggregate losses: prefix sums are capped with the aggregate retention and
/// limit, then differenced against the previous capped prefix (0 before the
/// first event).
std::vector<double> apply_aggregate_terms(std::span<const double> occurrence_losses,
                                          const LayerTerms& terms);

struct TrialRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const TrialRange&, const TrialRange&) = default;
};

/// Splits [0, trial_count) into exactly `worker_count` contiguous ranges whose
/// sizes differ by at most one; the first trial_count % worker_count ranges
/// get the extra trial. With trial_count < worker_count the tail ranges are
/// empty. Throws std::invalid_argument for worker_count == 0.
std::vector<TrialRange> partition_trials(std::size_t trial_count, unsigned worker_count);

/// Multi-worker engine. Validates the dataset first and throws ValidationError
/// on any violation. Double-precision results are bit-identical for every
/// worker_count and chunk_size.
AnalysisResult run_analysis(const Dataset& dataset, const EngineConfig& config);

/// Serial reference: one thread, whole-trial scratch arrays, no chunking, the
/// algorithm's loops in their original order. `config.precision` is honoured;
/// worker_count, chunk_size and instrumentation are ignored.
AnalysisResult run_analysis_serial(const Dataset& dataset, const EngineConfig& config = {});

}  // namespace ara
