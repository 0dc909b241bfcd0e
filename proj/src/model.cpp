// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include "ara/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace ara {

YearEventTable::YearEventTable(std::uint32_t catalogue_size, std::vector<std::uint64_t> trial_offsets,
                               std::vector<EventId> events, std::vector<double> timestamps)
    : catalogue_size_(catalogue_size),
      offsets_(std::move(trial_offsets)),
      events_(std::move(events)),
      timestamps_(std::move(timestamps)) {
  if (events_.size() != timestamps_.size()) {
    throw std::invalid_argument("year event table: event and timestamp counts differ");
  }
  if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != events_.size() ||
      !std::is_sorted(offsets_.begin(), offsets_.end())) {
    throw std::invalid_argument("year event table: malformed trial offsets");
  }
}

void YearEventTable::reserve(std::size_t trials, std::size_t occurrences) {
  offsets_.reserve(trials + 1);
  events_.reserve(occurrences);
  timestamps_.reserve(occurrences);
}

void YearEventTable::add_trial(std::span<const EventOccurrence> occurrences) {
  for (const auto& o : occurrences) {
    events_.push_back(o.event);
    timestamps_.push_back(o.timestamp);
  }
  offsets_.push_back(events_.size());
}

void YearEventTable::add_trial(std::span<const EventId> events, std::span<const double> timestamps) {
  if (events.size() != timestamps.size()) {
    throw std::invalid_argument("add_trial: event and timestamp counts differ");
  }
  events_.insert(events_.end(), events.begin(), events.end());
  timestamps_.insert(timestamps_.end(), timestamps.begin(), timestamps.end());
  offsets_.push_back(events_.size());
}

TrialView YearEventTable::trial(std::size_t index) const {
  const auto begin = offsets_.at(index);
  const auto count = offsets_.at(index + 1) - begin;
  return TrialView{index, std::span<const EventId>(events_).subspan(begin, count),
                   std::span<const double>(timestamps_).subspan(begin, count)};
}

YearLossTable::YearLossTable(std::vector<std::uint32_t> layer_ids, std::size_t trial_count)
    : layer_ids_(std::move(layer_ids)),
      trial_count_(trial_count),
      losses_(layer_ids_.size() * trial_count, 0.0) {}

std::optional<std::size_t> YearLossTable::row_of(std::uint32_t layer_id) const {
  auto it = std::find(layer_ids_.begin(), layer_ids_.end(), layer_id);
  if (it == layer_ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - layer_ids_.begin());
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::kInvalidCatalogue: return "invalid-catalogue";
    case ViolationKind::kInvalidEventId: return "invalid-event-id";
    case ViolationKind::kTimestampOutOfRange: return "timestamp-out-of-range";
    case ViolationKind::kTimestampOrder: return "timestamp-order";
    case ViolationKind::kDuplicateEventId: return "duplicate-event-id";
    case ViolationKind::kNonPositiveLoss: return "non-positive-loss";
    case ViolationKind::kInvalidFinancialTerms: return "invalid-financial-terms";
    case ViolationKind::kEmptyLayer: return "empty-layer";
    case ViolationKind::kUnknownElt: return "unknown-elt";
    case ViolationKind::kInvalidLayerTerms: return "invalid-layer-terms";
    case ViolationKind::kDuplicateLayerId: return "duplicate-layer-id";
  }
  return "unknown";
}

namespace {

std::string where(std::string_view what, std::size_t a) {
  std::ostringstream os;
  os << what << ' ' << a;
  return os.str();
}

std::string where(std::string_view what, std::size_t a, std::string_view sub, std::size_t b) {
  std::ostringstream os;
  os << what << ' ' << a << ", " << sub << ' ' << b;
  return os.str();
}

bool non_negative(double v) { return std::isfinite(v) && v >= 0.0; }
bool non_negative(const std::optional<double>& v) { return !v || non_negative(*v); }

void validate_yet(const YearEventTable& yet, ValidationReport& out) {
  const auto catalogue = yet.catalogue_size();
  if (catalogue == 0) {
    out.push_back({ViolationKind::kInvalidCatalogue, "yet", "catalogue size must be positive"});
  }
  for (std::size_t t = 0; t < yet.trial_count(); ++t) {
    const auto trial = yet.trial(t);
    for (std::size_t k = 0; k < trial.size(); ++k) {
      const auto id = trial.events[k].value;
      if (id == 0 || id > catalogue) {
        out.push_back({ViolationKind::kInvalidEventId, where("trial", t, "occurrence", k),
                       "event id " + std::to_string(id) + " outside [1, " + std::to_string(catalogue) + "]"});
      }
      const double ts = trial.timestamps[k];
      if (!(ts >= 0.0 && ts < 1.0)) {
        out.push_back({ViolationKind::kTimestampOutOfRange, where("trial", t, "occurrence", k),
                       "timestamp outside [0, 1)"});
      }
      if (k > 0 && ts < trial.timestamps[k - 1]) {
        out.push_back({ViolationKind::kTimestampOrder, where("trial", t, "occurrence", k),
                       "timestamp decreases relative to previous occurrence"});
      }
    }
  }
}

void validate_elts(std::uint32_t catalogue, std::span<const EventLossTable> elts, ValidationReport& out) {
  std::unordered_set<std::uint32_t> seen;
  for (std::size_t e = 0; e < elts.size(); ++e) {
    const auto& elt = elts[e];
    const auto& ft = elt.terms;
    if (!(std::isfinite(ft.exchange_rate) && ft.exchange_rate > 0.0) || !non_negative(ft.retention) ||
        !non_negative(ft.limit)) {
      out.push_back({ViolationKind::kInvalidFinancialTerms, where("elt", e),
                     "exchange rate must be > 0, retention and limit >= 0"});
    }
    seen.clear();
    seen.reserve(elt.records.size());
    for (std::size_t r = 0; r < elt.records.size(); ++r) {
      const auto& rec = elt.records[r];
      const auto id = rec.event.value;
      if (id == 0 || id > catalogue) {
        out.push_back({ViolationKind::kInvalidEventId, where("elt", e, "record", r),
                       "event id " + std::to_string(id) + " outside [1, " + std::to_string(catalogue) + "]"});
      } else if (!seen.insert(id).second) {
        out.push_back({ViolationKind::kDuplicateEventId, where("elt", e, "record", r),
                       "event id " + std::to_string(id) + " appears more than once"});
      }
      if (!(std::isfinite(rec.loss) && rec.loss > 0.0)) {
        out.push_back({ViolationKind::kNonPositiveLoss, where("elt", e, "record", r),
                       "recorded loss must be finite and > 0"});
      }
    }
  }
}

void validate_layers(std::size_t elt_count, std::span<const Layer> layers, ValidationReport& out) {
  std::unordered_set<std::uint32_t> ids;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    if (!ids.insert(layer.id).second) {
      out.push_back({ViolationKind::kDuplicateLayerId, where("layer", l),
                     "layer id " + std::to_string(layer.id) + " is not unique"});
    }
    if (layer.elts.empty()) {
      out.push_back({ViolationKind::kEmptyLayer, where("layer", l), "layer covers no ELTs"});
    }
    for (std::size_t k = 0; k < layer.elts.size(); ++k) {
      if (layer.elts[k] >= elt_count) {
        out.push_back({ViolationKind::kUnknownElt, where("layer", l, "elt ref", k),
                       "ELT index " + std::to_string(layer.elts[k]) + " does not exist"});
      }
    }
    const auto& t = layer.terms;
    if (!non_negative(t.occ_retention) || !non_negative(t.occ_limit) || !non_negative(t.agg_retention) ||
        !non_negative(t.agg_limit)) {
      out.push_back({ViolationKind::kInvalidLayerTerms, where("layer", l),
                     "retentions and limits must be finite and >= 0"});
    }
  }
}

}  // namespace

ValidationReport validate_dataset(const YearEventTable& yet, std::span<const EventLossTable> elts,
                                  std::span<const Layer> layers) {
  ValidationReport report;
  validate_yet(yet, report);
  validate_elts(yet.catalogue_size(), elts, report);
  validate_layers(elts.size(), layers, report);
  return report;
}

std::string format_report(const ValidationReport& report) {
  if (report.empty()) return "dataset is valid";
  std::ostringstream os;
  os << report.size() << " validation violation(s):";
  for (const auto& v : report) {
    os << "\n  [" << to_string(v.kind) << "] " << v.location << ": " << v.message;
  }
  return os.str();
}

}  // namespace ara
