// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ara/metrics.hpp"

namespace ara {
namespace {

LossDistribution one_to_hundred() {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  std::shuffle(v.begin(), v.end(), std::mt19937_64(1));
  return LossDistribution(std::move(v));
}

TEST(Metrics, OneToHundredExample) {
  const auto d = one_to_hundred();
  EXPECT_EQ(pml(d, 0.99), 99.0);
  EXPECT_EQ(tvar(d, 0.99), 99.5);
  EXPECT_EQ(expected_loss(d), 50.5);
}

TEST(Metrics, NearestRankEdges) {
  const auto d = one_to_hundred();
  EXPECT_EQ(pml(d, 1e-9), 1.0);
  EXPECT_EQ(pml(d, 0.5), 50.0);
  EXPECT_EQ(pml(d, 0.501), 51.0);
  EXPECT_EQ(pml(d, 0.999999), 100.0);
}

TEST(Metrics, TiesIncludedInTail) {
  const LossDistribution d({0.0, 0.0, 0.0, 5.0, 5.0});
  EXPECT_EQ(pml(d, 0.5), 0.0);
  EXPECT_EQ(tvar(d, 0.5), 2.0);
  EXPECT_EQ(pml(d, 0.7), 5.0);
  EXPECT_EQ(tvar(d, 0.7), 5.0);
}

TEST(Metrics, InvalidInputs) {
  const LossDistribution empty;
  EXPECT_THROW((void)pml(empty, 0.5), std::invalid_argument);
  EXPECT_THROW((void)tvar(empty, 0.5), std::invalid_argument);
  EXPECT_THROW((void)expected_loss(empty), std::invalid_argument);
  const auto d = one_to_hundred();
  for (double p : {0.0, 1.0, -0.1, 1.5, std::numeric_limits<double>::quiet_NaN()}) {
    EXPECT_THROW((void)pml(d, p), std::invalid_argument) << p;
    EXPECT_THROW((void)tvar(d, p), std::invalid_argument) << p;
  }
  EXPECT_THROW(LossDistribution({1.0, -2.0}), std::invalid_argument);
  EXPECT_THROW(LossDistribution({std::numeric_limits<double>::infinity()}), std::invalid_argument);
}

TEST(Metrics, TvarAtLeastPmlAndMonotone) {
  std::mt19937_64 rng(4);
  std::lognormal_distribution<double> loss(10.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> v(1 + rng() % 500);
    for (auto& x : v) x = loss(rng);
    const LossDistribution d(std::move(v));
    double prev_pml = 0.0, prev_tvar = 0.0;
    for (double p = 0.05; p < 1.0; p += 0.05) {
      const double q = pml(d, p), t = tvar(d, p);
      EXPECT_GE(t, q);
      EXPECT_GE(q, prev_pml);
      EXPECT_GE(t, prev_tvar);
      prev_pml = q;
      prev_tvar = t;
    }
  }
}

TEST(Metrics, LayerAndPortfolioScopes) {
  YearLossTable ylt({3, 8}, 4);
  const double a[] = {1.0, 2.0, 3.0, 4.0};
  const double b[] = {10.0, 0.0, 0.0, 20.0};
  for (std::size_t t = 0; t < 4; ++t) {
    ylt.at(0, t) = a[t];
    ylt.at(1, t) = b[t];
  }
  const auto layer = LossDistribution::for_layer(ylt, 8);
  EXPECT_EQ(pml(layer, 0.75), 10.0);
  const auto portfolio = LossDistribution::for_portfolio(ylt);
  EXPECT_EQ(std::vector<double>(portfolio.sorted().begin(), portfolio.sorted().end()),
            (std::vector<double>{2.0, 3.0, 11.0, 24.0}));
  EXPECT_THROW((void)LossDistribution::for_layer(ylt, 5), std::invalid_argument);
}

}  // namespace
}  // namespace ara
