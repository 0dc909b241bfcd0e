// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

// Sequential reference engine. Loops follow the published algorithm line for
// line over whole-trial arrays; the OpenMP engine is tested against it.

#include <algorithm>
#include <chrono>

#include "ara/engine.hpp"
#include "ara/trial_kernel.hpp"

namespace ara {
namespace {

template <typename Real>
Real reference_trial(const TrialView& trial, const LayerStores<Real>& stores, std::vector<Real>& x,
                     std::vector<Real>& lo) {
  const std::size_t n = trial.size();
  x.assign(n, Real{0});
  lo.assign(n, Real{0});

  for (std::size_t c = 0; c < stores.elt_count(); ++c) {
    const auto& table = *stores.tables[c];
    const auto& ft = stores.financial[c];
    for (std::size_t d = 0; d < n; ++d) x[d] = table[trial.events[d]];
    for (std::size_t d = 0; d < n; ++d) x[d] = detail::cap(x[d] * ft.rate, ft.retention, ft.limit, ft.has_limit);
    for (std::size_t d = 0; d < n; ++d) lo[d] += x[d];
  }

  const auto& t = stores.terms;
  for (std::size_t d = 0; d < n; ++d) lo[d] = detail::cap(lo[d], t.occ_retention, t.occ_limit, t.has_occ_limit);
  for (std::size_t d = 1; d < n; ++d) lo[d] = lo[d - 1] + lo[d];
  for (std::size_t d = 0; d < n; ++d) lo[d] = detail::cap(lo[d], t.agg_retention, t.agg_limit, t.has_agg_limit);
  // Backwards so every difference uses the not-yet-differenced predecessor.
  for (std::size_t d = n; d-- > 1;) lo[d] = lo[d] - lo[d - 1];

  Real lr{0};
  for (std::size_t d = 0; d < n; ++d) lr += lo[d];
  return lr;
}

template <typename Real>
AnalysisResult run_serial(const Dataset& dataset) {
  LossStoreSet<Real> stores(dataset);
  std::vector<std::uint32_t> ids;
  for (const auto& layer : dataset.layers) ids.push_back(layer.id);
  AnalysisResult result{YearLossTable(std::move(ids), dataset.yet.trial_count()), {}};

  const auto start = std::chrono::steady_clock::now();
  std::vector<Real> x, lo;
  for (std::size_t a = 0; a < dataset.layers.size(); ++a) {
    auto row = result.ylt.row(a);
    for (std::size_t b = 0; b < dataset.yet.trial_count(); ++b) {
      row[b] = static_cast<double>(reference_trial(dataset.yet.trial(b), stores.layer(a), x, lo));
    }
  }
  result.timings.total = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace

AnalysisResult run_analysis_serial(const Dataset& dataset, const EngineConfig& config) {
  if (auto report = validate_dataset(dataset); !report.empty()) throw ValidationError(std::move(report));
  return config.precision == Precision::kSingle ? run_serial<float>(dataset) : run_serial<double>(dataset);
}

}  // namespace ara
