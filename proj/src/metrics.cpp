// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include "ara/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ara {
namespace {

void require_usable(const LossDistribution& dist, double p) {
  if (dist.empty()) throw std::invalid_argument("loss distribution is empty");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("probability must lie in (0, 1), got " + std::to_string(p));
}

std::size_t nearest_rank(std::size_t n, double p) {
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  return std::clamp<std::size_t>(rank, 1, n);
}

}  // namespace

LossDistribution::LossDistribution(std::vector<double> losses) : losses_(std::move(losses)) {
  for (double v : losses_) {
    if (!(std::isfinite(v) && v >= 0.0)) throw std::invalid_argument("loss distribution entries must be finite and >= 0");
  }
  std::sort(losses_.begin(), losses_.end());
}

LossDistribution LossDistribution::for_layer(const YearLossTable& ylt, std::uint32_t layer_id) {
  auto row = ylt.row_of(layer_id);
  if (!row) throw std::invalid_argument("layer " + std::to_string(layer_id) + " is not in the year loss table");
  auto values = ylt.row(*row);
  return LossDistribution(std::vector<double>(values.begin(), values.end()));
}

LossDistribution LossDistribution::for_portfolio(const YearLossTable& ylt) {
  std::vector<double> sums(ylt.layer_count() == 0 ? 0 : ylt.trial_count(), 0.0);
  for (std::size_t r = 0; r < ylt.layer_count(); ++r) {
    auto values = ylt.row(r);
    for (std::size_t t = 0; t < sums.size(); ++t) sums[t] += values[t];
  }
  return LossDistribution(std::move(sums));
}

double pml(const LossDistribution& dist, double p) {
  require_usable(dist, p);
  return dist.sorted()[nearest_rank(dist.size(), p) - 1];
}

double tvar(const LossDistribution& dist, double p) {
  const double q = pml(dist, p);
  auto losses = dist.sorted();
  auto first = std::lower_bound(losses.begin(), losses.end(), q);
  double sum = 0.0;
  for (auto it = first; it != losses.end(); ++it) sum += *it;
  return sum / static_cast<double>(losses.end() - first);
}

double expected_loss(const LossDistribution& dist) {
  if (dist.empty()) throw std::invalid_argument("loss distribution is empty");
  double sum = 0.0;
  for (double v : dist.sorted()) sum += v;
  return sum / static_cast<double>(dist.size());
}

}  // namespace ara
