// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ara/model.hpp"

namespace ara {

template <typename Real>
class DirectAccessTable;

template <typename Real = double>
DirectAccessTable<Real> build_direct(const EventLossTable& elt, std::uint32_t catalogue_size);

/// Dense event-id indexed loss array for one ELT.
///
/// Slot e holds the loss for event id e, so a lookup is a single memory
/// access. The table always has catalogue_size + 1 slots (slot 0 unused) no
/// matter how sparse the source ELT is; absent events read as exactly 0.
template <typename Real>
class DirectAccessTable {
 public:
  using value_type = Real;

  DirectAccessTable() = default;

  std::uint32_t catalogue_size() const noexcept {
    return losses_.empty() ? 0 : static_cast<std::uint32_t>(losses_.size() - 1);
  }
  std::size_t slot_count() const noexcept { return losses_.size(); }
  std::size_t source_record_count() const noexcept { return record_count_; }
  std::span<const Real> slots() const noexcept { return losses_; }

  /// Throws std::out_of_range for ids outside [1, catalogue_size].
  Real lookup(EventId event) const {
    if (event.value == 0 || event.value >= losses_.size()) {
      throw std::out_of_range("direct access lookup: event id " + std::to_string(event.value) +
                              " outside [1, " + std::to_string(catalogue_size()) + "]");
    }
    return losses_[event.value];
  }

  // Hot path. Caller guarantees 1 <= id <= catalogue_size.
  Real operator[](EventId event) const noexcept { return losses_[event.value]; }

  std::size_t payload_bytes() const noexcept { return losses_.size() * sizeof(Real); }

  template <typename R>
  friend DirectAccessTable<R> build_direct(const EventLossTable& elt, std::uint32_t catalogue_size);

 private:
  std::vector<Real> losses_;
  std::size_t record_count_ = 0;
};

/// Fills a direct access table from an ELT. Throws std::invalid_argument naming
/// the offending id when a record lies outside [1, catalogue_size].
template <typename Real>
DirectAccessTable<Real> build_direct(const EventLossTable& elt, std::uint32_t catalogue_size) {
  DirectAccessTable<Real> table;
  table.losses_.assign(static_cast<std::size_t>(catalogue_size) + 1, Real{0});
  for (const auto& rec : elt.records) {
    if (rec.event.value == 0 || rec.event.value > catalogue_size) {
      throw std::invalid_argument("build_direct: event id " + std::to_string(rec.event.value) +
                                  " outside catalogue [1, " + std::to_string(catalogue_size) + "]");
    }
    table.losses_[rec.event.value] = static_cast<Real>(rec.loss);
  }
  table.record_count_ = elt.records.size();
  return table;
}

/// Sorted (event, loss) records searched by binary search. Kept as the
/// memory-lean comparison point and as the lookup oracle for DirectAccessTable.
class CompactTable {
 public:
  CompactTable() = default;
  explicit CompactTable(const EventLossTable& elt);

  std::span<const EventLoss> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  /// Total over all ids: absent events yield 0.
  double lookup(EventId event) const noexcept;

  std::size_t payload_bytes() const noexcept { return records_.size() * record_bytes; }

  /// Bytes per record in the packed on-disk/in-memory accounting: a 32-bit id
  /// plus a 64-bit loss.
  static constexpr std::size_t record_bytes = sizeof(std::uint32_t) + sizeof(double);

 private:
  std::vector<EventLoss> records_;
};

inline CompactTable build_compact(const EventLossTable& elt) { return CompactTable(elt); }

template <typename Real>
std::size_t memory_footprint(const DirectAccessTable<Real>& table) noexcept {
  return table.payload_bytes();
}

inline std::size_t memory_footprint(const CompactTable& table) noexcept { return table.payload_bytes(); }

}  // namespace ara
