// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ara/model.hpp"

namespace ara {

/// Sorted per-trial losses for one scope of a YLT.
class LossDistribution {
 public:
  LossDistribution() = default;
  /// Sorts the given losses. Throws std::invalid_argument on negative or
  /// non-finite entries.
  explicit LossDistribution(std::vector<double> losses);

  /// Trial losses of a single layer, selected by Layer::id.
  static LossDistribution for_layer(const YearLossTable& ylt, std::uint32_t layer_id);
  /// Per-trial sums over all layers, added in row order.
  static LossDistribution for_portfolio(const YearLossTable& ylt);

  std::span<const double> sorted() const noexcept { return losses_; }
  std::size_t size() const noexcept { return losses_.size(); }
  bool empty() const noexcept { return losses_.empty(); }

 private:
  std::vector<double> losses_;
};

// All three throw std::invalid_argument for an empty distribution or for p
// outside the open interval (0, 1).

/// Nearest-rank quantile: the ceil(p * n)-th smallest loss.
double pml(const LossDistribution& dist, double p);
/// Mean of every loss >= pml(dist, p), accumulated in ascending order.
double tvar(const LossDistribution& dist, double p);
double expected_loss(const LossDistribution& dist);

}  // namespace ara
