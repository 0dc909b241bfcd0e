// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include "ara/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace ara {
namespace {

void check_range(const ValueRange& r, const char* name, bool strictly_positive) {
  const bool ok = std::isfinite(r.min) && std::isfinite(r.max) && r.min <= r.max &&
                  (strictly_positive ? r.min > 0.0 : r.min >= 0.0);
  if (!ok) {
    throw std::invalid_argument(std::string("gen spec: ") + name + " range must be finite, ordered and " +
                                (strictly_positive ? "> 0" : ">= 0"));
  }
}

// Floyd's sampling of k distinct values from [0, n), returned ascending.
std::vector<std::uint64_t> sample_distinct(SplitMix64& rng, std::uint64_t n, std::size_t k) {
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(k * 2);
  std::vector<std::uint64_t> out;
  out.reserve(k);
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> draw_limit(SplitMix64& rng, const std::optional<ValueRange>& range) {
  if (!range) return std::nullopt;
  return rng.uniform(range->min, range->max);
}

}  // namespace

GenSpec standard_workload(std::uint64_t seed) {
  GenSpec spec;
  spec.seed = seed;
  spec.trial_count = 100'000;
  spec.events_per_trial = 1'000;
  spec.catalogue_size = 2'000'000;
  spec.elt_count = 15;
  spec.records_per_elt = 20'000;
  spec.layer_count = 1;
  spec.elts_per_layer = 15;
  spec.loss_range = {1.0, 1.0e6};
  spec.terms.exchange_rate = {0.8, 1.25};
  spec.terms.elt_retention = {0.0, 2.0e4};
  spec.terms.elt_limit = ValueRange{5.0e5, 1.0e6};
  spec.terms.occ_retention = {0.0, 5.0e4};
  spec.terms.occ_limit = ValueRange{1.5e6, 3.0e6};
  spec.terms.agg_retention = {1.0e6, 5.0e6};
  spec.terms.agg_limit = ValueRange{4.0e7, 8.0e7};
  return spec;
}

void check_spec(const GenSpec& spec) {
  if (spec.catalogue_size == 0) throw std::invalid_argument("gen spec: catalogue_size must be >= 1");
  if (spec.records_per_elt > spec.catalogue_size) {
    throw std::invalid_argument("gen spec: records_per_elt (" + std::to_string(spec.records_per_elt) +
                                ") exceeds catalogue_size (" + std::to_string(spec.catalogue_size) + ")");
  }
  if (spec.elts_per_layer > spec.elt_count) {
    throw std::invalid_argument("gen spec: elts_per_layer (" + std::to_string(spec.elts_per_layer) +
                                ") exceeds elt count (" + std::to_string(spec.elt_count) + ")");
  }
  if (spec.layer_count > 0 && spec.elts_per_layer == 0) {
    throw std::invalid_argument("gen spec: layers need at least one ELT each");
  }
  if (spec.layer_count > std::numeric_limits<std::uint32_t>::max() ||
      spec.elt_count > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("gen spec: layer and ELT counts must fit in 32 bits");
  }
  check_range(spec.loss_range, "loss", true);
  const auto& t = spec.terms;
  check_range(t.exchange_rate, "exchange rate", true);
  check_range(t.elt_retention, "ELT retention", false);
  if (t.elt_limit) check_range(*t.elt_limit, "ELT limit", false);
  check_range(t.occ_retention, "occurrence retention", false);
  if (t.occ_limit) check_range(*t.occ_limit, "occurrence limit", false);
  check_range(t.agg_retention, "aggregate retention", false);
  if (t.agg_limit) check_range(*t.agg_limit, "aggregate limit", false);
}

Dataset generate(const GenSpec& spec) {
  check_spec(spec);
  const std::size_t n_trials = spec.trial_count;
  const std::size_t per_trial = spec.events_per_trial;

  std::vector<std::uint64_t> offsets(n_trials + 1);
  for (std::size_t i = 0; i <= n_trials; ++i) offsets[i] = i * per_trial;
  std::vector<EventId> events(n_trials * per_trial);
  std::vector<double> timestamps(n_trials * per_trial);

  const auto trials = static_cast<std::ptrdiff_t>(n_trials);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < trials; ++i) {
    SplitMix64 rng(substream_seed(spec.seed, StreamDomain::kTrial, static_cast<std::uint64_t>(i)));
    const std::size_t base = static_cast<std::size_t>(i) * per_trial;
    for (std::size_t k = 0; k < per_trial; ++k) {
      events[base + k] = EventId{static_cast<std::uint32_t>(rng.below(spec.catalogue_size) + 1)};
      timestamps[base + k] = rng.uniform01();
    }
    std::sort(timestamps.begin() + static_cast<std::ptrdiff_t>(base),
              timestamps.begin() + static_cast<std::ptrdiff_t>(base + per_trial));
  }

  Dataset ds;
  ds.yet = YearEventTable(spec.catalogue_size, std::move(offsets), std::move(events), std::move(timestamps));

  const auto& terms = spec.terms;
  ds.elts.resize(spec.elt_count);
  for (std::size_t e = 0; e < spec.elt_count; ++e) {
    SplitMix64 rng(substream_seed(spec.seed, StreamDomain::kElt, e));
    auto& elt = ds.elts[e];
    elt.terms.exchange_rate = rng.uniform(terms.exchange_rate.min, terms.exchange_rate.max);
    elt.terms.retention = rng.uniform(terms.elt_retention.min, terms.elt_retention.max);
    elt.terms.limit = draw_limit(rng, terms.elt_limit);
    const auto ids = sample_distinct(rng, spec.catalogue_size, spec.records_per_elt);
    elt.records.reserve(ids.size());
    for (auto id : ids) {
      // uniform() may round up to max for tiny ranges; clamp keeps the loss > 0.
      double loss = std::max(rng.uniform(spec.loss_range.min, spec.loss_range.max), spec.loss_range.min);
      elt.records.push_back({EventId{static_cast<std::uint32_t>(id + 1)}, loss});
    }
  }

  ds.layers.resize(spec.layer_count);
  for (std::size_t l = 0; l < spec.layer_count; ++l) {
    SplitMix64 rng(substream_seed(spec.seed, StreamDomain::kLayer, l));
    auto& layer = ds.layers[l];
    layer.id = static_cast<std::uint32_t>(l);
    for (auto e : sample_distinct(rng, spec.elt_count, spec.elts_per_layer)) {
      layer.elts.push_back(static_cast<std::uint32_t>(e));
    }
    layer.terms.occ_retention = rng.uniform(terms.occ_retention.min, terms.occ_retention.max);
    layer.terms.occ_limit = draw_limit(rng, terms.occ_limit);
    layer.terms.agg_retention = rng.uniform(terms.agg_retention.min, terms.agg_retention.max);
    layer.terms.agg_limit = draw_limit(rng, terms.agg_limit);
  }
  return ds;
}

}  // namespace ara
