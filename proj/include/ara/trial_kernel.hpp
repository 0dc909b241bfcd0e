// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "ara/engine.hpp"
#include "ara/loss_store.hpp"
#include "ara/model.hpp"

namespace ara {

/// Financial terms converted to the engine's working precision.
template <typename Real>
struct PreparedFinancialTerms {
  Real rate{1};
  Real retention{0};
  Real limit{0};
  bool has_limit = false;

  static PreparedFinancialTerms from(const FinancialTerms& t) {
    return {static_cast<Real>(t.exchange_rate), static_cast<Real>(t.retention),
            static_cast<Real>(t.limit.value_or(0.0)), t.limit.has_value()};
  }
};

template <typename Real>
struct PreparedLayerTerms {
  Real occ_retention{0};
  Real occ_limit{0};
  bool has_occ_limit = false;
  Real agg_retention{0};
  Real agg_limit{0};
  bool has_agg_limit = false;

  static PreparedLayerTerms from(const LayerTerms& t) {
    return {static_cast<Real>(t.occ_retention), static_cast<Real>(t.occ_limit.value_or(0.0)),
            t.occ_limit.has_value(),            static_cast<Real>(t.agg_retention),
            static_cast<Real>(t.agg_limit.value_or(0.0)), t.agg_limit.has_value()};
  }
};

/// Everything the kernel needs for one layer: one direct access table per
/// covered ELT (in layer order) plus the matching financial terms.
template <typename Real>
struct LayerStores {
  std::vector<const DirectAccessTable<Real>*> tables;
  std::vector<PreparedFinancialTerms<Real>> financial;
  PreparedLayerTerms<Real> terms;

  std::size_t elt_count() const noexcept { return tables.size(); }
};

/// Direct access tables for every ELT of a dataset, and per-layer views into
/// them. Tables are shared between layers that cover the same ELT.
template <typename Real>
class LossStoreSet {
 public:
  explicit LossStoreSet(const Dataset& dataset) {
    std::vector<bool> used(dataset.elts.size(), false);
    for (const auto& layer : dataset.layers)
      for (auto e : layer.elts) used.at(e) = true;

    tables_.resize(dataset.elts.size());
    for (std::size_t e = 0; e < dataset.elts.size(); ++e) {
      if (used[e]) tables_[e] = build_direct<Real>(dataset.elts[e], dataset.yet.catalogue_size());
    }
    layers_.reserve(dataset.layers.size());
    for (const auto& layer : dataset.layers) {
      LayerStores<Real> stores;
      stores.terms = PreparedLayerTerms<Real>::from(layer.terms);
      for (auto e : layer.elts) {
        stores.tables.push_back(&tables_[e]);
        stores.financial.push_back(PreparedFinancialTerms<Real>::from(dataset.elts[e].terms));
      }
      layers_.push_back(std::move(stores));
    }
  }

  LossStoreSet(const LossStoreSet&) = delete;
  LossStoreSet& operator=(const LossStoreSet&) = delete;

  const LayerStores<Real>& layer(std::size_t index) const { return layers_.at(index); }
  std::size_t layer_count() const noexcept { return layers_.size(); }

 private:
  std::vector<DirectAccessTable<Real>> tables_;
  std::vector<LayerStores<Real>> layers_;
};

/// Per-worker scratch space. Buffers hold one chunk of events; the running
/// aggregate state carries the capped prefix sum across chunks of one trial.
template <typename Real>
struct TrialWorkspace {
  std::vector<EventId> event_ids;     // fetched ids of the current chunk
  std::vector<Real> per_elt_losses;   // [elt][position] raw looked-up losses
  std::vector<Real> combined_losses;  // per position, summed over ELTs
  Real running_aggregate{0};          // uncapped prefix sum of occurrence losses
  Real previous_capped{0};            // capped prefix at the previous event

  void prepare(std::size_t elt_count, std::size_t chunk) {
    if (event_ids.size() < chunk) event_ids.resize(chunk);
    if (combined_losses.size() < chunk) combined_losses.resize(chunk);
    if (per_elt_losses.size() < elt_count * chunk) per_elt_losses.resize(elt_count * chunk);
    running_aggregate = Real{0};
    previous_capped = Real{0};
  }
};

/// Per-worker phase time accumulator.
struct PhaseClock {
  using Clock = std::chrono::steady_clock;

  Clock::duration fetch_events{0};
  Clock::duration loss_lookup{0};
  Clock::duration financial_terms{0};
  Clock::duration occurrence_terms{0};
  Clock::duration aggregate_terms{0};

  PhaseClock& operator+=(const PhaseClock& o) {
    fetch_events += o.fetch_events;
    loss_lookup += o.loss_lookup;
    financial_terms += o.financial_terms;
    occurrence_terms += o.occurrence_terms;
    aggregate_terms += o.aggregate_terms;
    return *this;
  }
};

namespace detail {

template <typename Real>
inline Real cap(Real value, Real retention, Real limit, bool has_limit) noexcept {
  Real net = std::max(value - retention, Real{0});
  return has_limit ? std::min(net, limit) : net;
}

template <bool Instrumented>
struct Stopwatch {
  PhaseClock::Clock::time_point last{};
  void start() noexcept {
    if constexpr (Instrumented) last = PhaseClock::Clock::now();
  }
  void lap(PhaseClock::Clock::duration& into) noexcept {
    if constexpr (Instrumented) {
      auto now = PhaseClock::Clock::now();
      into += now - last;
      last = now;
    }
  }
};

}  // namespace detail

/// Trial loss of one trial under one layer.
///
/// Events are processed in blocks of `chunk_size`; each block goes through all
/// four steps (lookup, financial terms, occurrence terms, aggregate terms)
/// before the next one. Arithmetic order is the same as the unchunked loops,
/// so the result does not depend on chunk_size.
template <typename Real, bool Instrumented = false>
Real run_trial(const TrialView& trial, const LayerStores<Real>& stores, TrialWorkspace<Real>& ws,
               std::size_t chunk_size, PhaseClock* clock = nullptr) {
  const std::size_t n = trial.size();
  const std::size_t elts = stores.elt_count();
  const std::size_t chunk = std::min(chunk_size, std::max<std::size_t>(n, 1));
  ws.prepare(elts, chunk);
  const auto& lt = stores.terms;

  [[maybe_unused]] detail::Stopwatch<Instrumented> sw;
  [[maybe_unused]] PhaseClock local;
  Real trial_loss{0};

  for (std::size_t base = 0; base < n; base += chunk) {
    const std::size_t m = std::min(chunk, n - base);
    sw.start();

    // Fetch the block's events from the YET.
    std::copy_n(trial.events.begin() + base, m, ws.event_ids.begin());
    sw.lap(local.fetch_events);

    // Look up each event in every ELT of the layer.
    for (std::size_t k = 0; k < elts; ++k) {
      const DirectAccessTable<Real>& table = *stores.tables[k];
      Real* out = ws.per_elt_losses.data() + k * chunk;
      for (std::size_t d = 0; d < m; ++d) out[d] = table[ws.event_ids[d]];
    }
    sw.lap(local.loss_lookup);

    // Financial terms per ELT, accumulated into the combined event loss.
    Real* combined = ws.combined_losses.data();
    std::fill_n(combined, m, Real{0});
    for (std::size_t k = 0; k < elts; ++k) {
      const auto& ft = stores.financial[k];
      const Real* raw = ws.per_elt_losses.data() + k * chunk;
      for (std::size_t d = 0; d < m; ++d) {
        combined[d] += detail::cap(raw[d] * ft.rate, ft.retention, ft.limit, ft.has_limit);
      }
    }
    sw.lap(local.financial_terms);

    for (std::size_t d = 0; d < m; ++d) {
      combined[d] = detail::cap(combined[d], lt.occ_retention, lt.occ_limit, lt.has_occ_limit);
    }
    sw.lap(local.occurrence_terms);

    // Capped prefix sums, differenced back into per-event increments, then
    // summed into the trial loss.
    for (std::size_t d = 0; d < m; ++d) {
      ws.running_aggregate += combined[d];
      const Real capped = detail::cap(ws.running_aggregate, lt.agg_retention, lt.agg_limit, lt.has_agg_limit);
      combined[d] = capped - ws.previous_capped;
      ws.previous_capped = capped;
    }
    for (std::size_t d = 0; d < m; ++d) trial_loss += combined[d];
    sw.lap(local.aggregate_terms);
  }

  if constexpr (Instrumented) {
    if (clock) *clock += local;
  }
  return trial_loss;
}

}  // namespace ara
