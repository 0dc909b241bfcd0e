// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include "ara/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace ara {

std::string_view to_string(Precision p) noexcept {
  return p == Precision::kSingle ? "single" : "double";
}

void check_config(const EngineConfig& config) {
  if (config.worker_count == 0) throw std::invalid_argument("engine config: worker_count must be >= 1");
  if (config.chunk_size == 0) throw std::invalid_argument("engine config: chunk_size must be >= 1");
}

double apply_financial_terms(double raw_loss, const FinancialTerms& terms) noexcept {
  double net = std::max(raw_loss * terms.exchange_rate - terms.retention, 0.0);
  return terms.limit ? std::min(net, *terms.limit) : net;
}

double apply_occurrence_terms(double event_loss, const LayerTerms& terms) noexcept {
  double net = std::max(event_loss - terms.occ_retention, 0.0);
  return terms.occ_limit ? std::min(net, *terms.occ_limit) : net;
}

std::vector<double> apply_aggregate_terms(std::span<const double> occurrence_losses,
                                          const LayerTerms& terms) {
  std::vector<double> out(occurrence_losses.size());
  double prefix = 0.0;
  double previous = 0.0;
  for (std::size_t d = 0; d < occurrence_losses.size(); ++d) {
    prefix += occurrence_losses[d];
    double capped = std::max(prefix - terms.agg_retention, 0.0);
    if (terms.agg_limit) capped = std::min(capped, *terms.agg_limit);
    out[d] = capped - previous;
    previous = capped;
  }
  return out;
}

std::vector<TrialRange> partition_trials(std::size_t trial_count, unsigned worker_count) {
  if (worker_count == 0) throw std::invalid_argument("partition_trials: worker_count must be >= 1");
  std::vector<TrialRange> ranges(worker_count);
  const std::size_t base = trial_count / worker_count;
  const std::size_t extra = trial_count % worker_count;
  std::size_t begin = 0;
  for (unsigned w = 0; w < worker_count; ++w) {
    const std::size_t size = base + (w < extra ? 1 : 0);
    ranges[w] = {begin, begin + size};
    begin += size;
  }
  return ranges;
}

}  // namespace ara
