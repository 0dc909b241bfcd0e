// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <omp.h>

#include <set>

#include "ara/datagen.hpp"

namespace ara {
namespace {

GenSpec small() {
  GenSpec spec;
  spec.seed = 42;
  spec.trial_count = 200;
  spec.events_per_trial = 30;
  spec.catalogue_size = 1000;
  spec.elt_count = 4;
  spec.records_per_elt = 250;
  spec.layer_count = 2;
  spec.elts_per_layer = 3;
  return spec;
}

TEST(SplitMix64, KnownSequence) {
  // Reference outputs of SplitMix64 seeded with 1234567.
  SplitMix64 g(1234567);
  EXPECT_EQ(g.next(), 6457827717110365317ULL);
  EXPECT_EQ(g.next(), 3203168211198807973ULL);
  EXPECT_EQ(g.next(), 9817491932198370423ULL);
}

TEST(SplitMix64, BoundedDraws) {
  SplitMix64 g(9);
  for (int i = 0; i < 10000; ++i) {
    const double u = g.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(g.below(7), 7u);
  }
  EXPECT_EQ(g.uniform(3.0, 3.0), 3.0);
}

TEST(Generate, SameSeedSameDataset) {
  EXPECT_EQ(generate(small()), generate(small()));
  auto other = small();
  other.seed = 43;
  EXPECT_NE(generate(small()).yet, generate(other).yet);
}

TEST(Generate, IndependentOfThreadCount) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = generate(small());
  omp_set_num_threads(4);
  const auto four = generate(small());
  omp_set_num_threads(saved);
  EXPECT_EQ(one, four);
}

TEST(Generate, OutputIsValidAndShaped) {
  const auto spec = small();
  const auto ds = generate(spec);
  EXPECT_TRUE(validate_dataset(ds).empty()) << format_report(validate_dataset(ds));
  EXPECT_EQ(ds.yet.trial_count(), spec.trial_count);
  EXPECT_EQ(ds.yet.occurrence_count(), spec.trial_count * spec.events_per_trial);
  EXPECT_EQ(ds.yet.catalogue_size(), spec.catalogue_size);
  ASSERT_EQ(ds.elts.size(), spec.elt_count);
  for (const auto& elt : ds.elts) {
    EXPECT_EQ(elt.records.size(), spec.records_per_elt);
    for (const auto& r : elt.records) {
      EXPECT_GE(r.loss, spec.loss_range.min);
      EXPECT_LT(r.loss, spec.loss_range.max);
    }
  }
  ASSERT_EQ(ds.layers.size(), spec.layer_count);
  std::set<std::uint32_t> ids;
  for (const auto& layer : ds.layers) {
    ids.insert(layer.id);
    EXPECT_EQ(layer.elts.size(), spec.elts_per_layer);
    EXPECT_EQ(std::set<std::uint32_t>(layer.elts.begin(), layer.elts.end()).size(), spec.elts_per_layer);
  }
  EXPECT_EQ(ids.size(), spec.layer_count);
}

TEST(Generate, FullCoverageWhenRecordsEqualCatalogue) {
  auto spec = small();
  spec.records_per_elt = spec.catalogue_size;
  const auto ds = generate(spec);
  for (const auto& elt : ds.elts) EXPECT_EQ(elt.records.size(), spec.catalogue_size);
  EXPECT_TRUE(validate_dataset(ds).empty());
}

TEST(CheckSpec, InfeasibleSpecsRejected) {
  auto spec = small();
  spec.records_per_elt = spec.catalogue_size + 1;
  EXPECT_THROW(generate(spec), std::invalid_argument);

  spec = small();
  spec.elts_per_layer = spec.elt_count + 1;
  EXPECT_THROW(check_spec(spec), std::invalid_argument);

  spec = small();
  spec.catalogue_size = 0;
  EXPECT_THROW(check_spec(spec), std::invalid_argument);

  spec = small();
  spec.loss_range = {0.0, 10.0};
  EXPECT_THROW(check_spec(spec), std::invalid_argument);

  spec = small();
  spec.loss_range = {10.0, 1.0};
  EXPECT_THROW(check_spec(spec), std::invalid_argument);
}

TEST(CheckSpec, StandardWorkloadShape) {
  const auto spec = standard_workload(1);
  EXPECT_NO_THROW(check_spec(spec));
  EXPECT_EQ(spec.trial_count, 100'000u);
  EXPECT_EQ(spec.events_per_trial, 1'000u);
  EXPECT_EQ(spec.catalogue_size, 2'000'000u);
  EXPECT_EQ(spec.elt_count, 15u);
  EXPECT_EQ(spec.records_per_elt, 20'000u);
  EXPECT_EQ(spec.layer_count, 1u);
}

}  // namespace
}  // namespace ara
