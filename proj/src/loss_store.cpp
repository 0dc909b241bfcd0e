// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include "ara/loss_store.hpp"

#include <algorithm>

namespace ara {

CompactTable::CompactTable(const EventLossTable& elt) : records_(elt.records) {
  std::sort(records_.begin(), records_.end(),
            [](const EventLoss& a, const EventLoss& b) { return a.event < b.event; });
}

double CompactTable::lookup(EventId event) const noexcept {
  auto it = std::lower_bound(records_.begin(), records_.end(), event,
                             [](const EventLoss& rec, EventId id) { return rec.event < id; });
  if (it == records_.end() || it->event != event) return 0.0;
  return it->loss;
}

}  // namespace ara
