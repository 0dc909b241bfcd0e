// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ara {

/// Identifier into the global event catalogue. Valid ids are 1..catalogue_size;
/// 0 is reserved as invalid.
struct EventId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(EventId, EventId) = default;
};

/// One event occurrence in a trial. `timestamp` is a fraction of the
/// contractual year in [0, 1).
struct EventOccurrence {
  EventId event;
  double timestamp = 0.0;

  friend bool operator==(const EventOccurrence&, const EventOccurrence&) = default;
};

/// Read-only view of one trial inside a YearEventTable.
struct TrialView {
  std::size_t id = 0;
  std::span<const EventId> events;
  std::span<const double> timestamps;

  std::size_t size() const noexcept { return events.size(); }
  bool empty() const noexcept { return events.empty(); }
};

/// Pre-simulated year event table.
///
/// Trials are stored back to back (structure of arrays) so a trial is a pair of
/// contiguous spans. Trial ids are the positions 0..trial_count()-1, which makes
/// them unique and contiguous by construction.
class YearEventTable {
 public:
  YearEventTable() = default;
  explicit YearEventTable(std::uint32_t catalogue_size) : catalogue_size_(catalogue_size) {}

  /// Builds a table directly from its flat representation. `trial_offsets` has
  /// trial_count + 1 non-decreasing entries starting at 0 and ending at
  /// events.size(). Throws std::invalid_argument on shape errors.
  YearEventTable(std::uint32_t catalogue_size, std::vector<std::uint64_t> trial_offsets,
                 std::vector<EventId> events, std::vector<double> timestamps);

  void reserve(std::size_t trials, std::size_t occurrences);
  void add_trial(std::span<const EventOccurrence> occurrences);
  void add_trial(std::span<const EventId> events, std::span<const double> timestamps);

  std::uint32_t catalogue_size() const noexcept { return catalogue_size_; }
  std::size_t trial_count() const noexcept { return offsets_.size() - 1; }
  std::size_t occurrence_count() const noexcept { return events_.size(); }
  TrialView trial(std::size_t index) const;

  std::span<const std::uint64_t> trial_offsets() const noexcept { return offsets_; }
  std::span<const EventId> events() const noexcept { return events_; }
  std::span<const double> timestamps() const noexcept { return timestamps_; }

  friend bool operator==(const YearEventTable&, const YearEventTable&) = default;

 private:
  std::uint32_t catalogue_size_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<EventId> events_;
  std::vector<double> timestamps_;
};

/// Per-ELT terms applied to each individual event loss: the raw loss is
/// converted with `exchange_rate`, reduced by `retention` and capped at `limit`.
struct FinancialTerms {
  double exchange_rate = 1.0;
  double retention = 0.0;
  std::optional<double> limit;  // absent = unlimited

  friend bool operator==(const FinancialTerms&, const FinancialTerms&) = default;
};

struct EventLoss {
  EventId event;
  double loss = 0.0;

  friend bool operator==(const EventLoss&, const EventLoss&) = default;
};

struct EventLossTable {
  std::vector<EventLoss> records;
  FinancialTerms terms;

  friend bool operator==(const EventLossTable&, const EventLossTable&) = default;
};

struct LayerTerms {
  double occ_retention = 0.0;
  std::optional<double> occ_limit;
  double agg_retention = 0.0;
  std::optional<double> agg_limit;

  friend bool operator==(const LayerTerms&, const LayerTerms&) = default;
};

/// A reinsurance contract. `elts` holds indices into the dataset's ELT list.
struct Layer {
  std::uint32_t id = 0;
  std::vector<std::uint32_t> elts;
  LayerTerms terms;

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct Dataset {
  YearEventTable yet;
  std::vector<EventLossTable> elts;
  std::vector<Layer> layers;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Dense (layer, trial) loss matrix. Rows follow the order of the analysed
/// layers; `layer_ids()` maps a row back to its Layer::id.
class YearLossTable {
 public:
  YearLossTable() = default;
  YearLossTable(std::vector<std::uint32_t> layer_ids, std::size_t trial_count);

  std::size_t layer_count() const noexcept { return layer_ids_.size(); }
  std::size_t trial_count() const noexcept { return trial_count_; }
  bool empty() const noexcept { return losses_.empty(); }
  std::span<const std::uint32_t> layer_ids() const noexcept { return layer_ids_; }

  /// Row index for a layer id, or nullopt when the layer is not in the table.
  std::optional<std::size_t> row_of(std::uint32_t layer_id) const;

  double at(std::size_t row, std::size_t trial) const { return losses_[row * trial_count_ + trial]; }
  double& at(std::size_t row, std::size_t trial) { return losses_[row * trial_count_ + trial]; }
  std::span<const double> row(std::size_t row) const {
    return std::span<const double>(losses_).subspan(row * trial_count_, trial_count_);
  }
  std::span<double> row(std::size_t row) {
    return std::span<double>(losses_).subspan(row * trial_count_, trial_count_);
  }
  std::span<const double> values() const noexcept { return losses_; }

  friend bool operator==(const YearLossTable&, const YearLossTable&) = default;

 private:
  std::vector<std::uint32_t> layer_ids_;
  std::size_t trial_count_ = 0;
  std::vector<double> losses_;
};

enum class ViolationKind {
  kInvalidCatalogue,
  kInvalidEventId,
  kTimestampOutOfRange,
  kTimestampOrder,
  kDuplicateEventId,
  kNonPositiveLoss,
  kInvalidFinancialTerms,
  kEmptyLayer,
  kUnknownElt,
  kInvalidLayerTerms,
  kDuplicateLayerId,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::string location;  // e.g. "trial 3, occurrence 1" or "elt 2, record 7"
  std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Checks every structural invariant of the dataset. Returns an empty report
/// when the dataset is well formed; never throws on bad data.
ValidationReport validate_dataset(const YearEventTable& yet, std::span<const EventLossTable> elts,
                                  std::span<const Layer> layers);

inline ValidationReport validate_dataset(const Dataset& dataset) {
  return validate_dataset(dataset.yet, dataset.elts, dataset.layers);
}

std::string format_report(const ValidationReport& report);

/// Raised when an operation that requires a valid dataset is given one with
/// violations. Carries the full report.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report)
      : std::runtime_error(format_report(report)), report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace ara
