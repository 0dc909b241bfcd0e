// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "ara/datagen.hpp"
#include "ara/engine.hpp"
#include "ara/trial_kernel.hpp"
#include "test_support.hpp"

namespace ara {
namespace {

// One trial, events 1, 2, 3 in order; one ELT with losses 100, 50, 200; occurrence
// retention 10 and limit 100; aggregate retention 50 and limit 150.
Dataset worked_example() {
  Dataset ds;
  ds.yet = YearEventTable(3);
  const std::vector<EventOccurrence> trial{{EventId{1}, 0.1}, {EventId{2}, 0.4}, {EventId{3}, 0.7}};
  ds.yet.add_trial(trial);
  ds.elts.push_back({{{EventId{1}, 100.0}, {EventId{2}, 50.0}, {EventId{3}, 200.0}}, {}});
  ds.layers.push_back({0, {0}, {10.0, 100.0, 50.0, 150.0}});
  return ds;
}

TEST(Terms, FinancialTermsExample) {
  EXPECT_EQ(apply_financial_terms(100.0, {2.0, 50.0, 120.0}), 120.0);
  EXPECT_EQ(apply_financial_terms(100.0, {2.0, 50.0, std::nullopt}), 150.0);
  EXPECT_EQ(apply_financial_terms(10.0, {1.0, 50.0, 120.0}), 0.0);
}

TEST(Terms, OccurrenceTermsExample) {
  LayerTerms t;
  t.occ_retention = 20.0;
  t.occ_limit = 50.0;
  EXPECT_EQ(apply_occurrence_terms(100.0, t), 50.0);
  EXPECT_EQ(apply_occurrence_terms(30.0, t), 10.0);
}

TEST(Terms, AggregateTermsExample) {
  LayerTerms t;
  t.agg_retention = 50.0;
  t.agg_limit = 150.0;
  const std::vector<double> lo{90.0, 40.0, 100.0};
  EXPECT_EQ(apply_aggregate_terms(lo, t), (std::vector<double>{40.0, 40.0, 70.0}));
}

TEST(Terms, AggregateOfEmptyTrialIsEmpty) {
  EXPECT_TRUE(apply_aggregate_terms({}, LayerTerms{}).empty());
}

TEST(RunTrial, WorkedExampleGives150) {
  const auto ds = worked_example();
  LossStoreSet<double> stores(ds);
  TrialWorkspace<double> ws;
  for (std::size_t chunk : {1, 2, 3, 256}) {
    EXPECT_EQ(run_trial<double>(ds.yet.trial(0), stores.layer(0), ws, chunk), 150.0) << "chunk " << chunk;
  }
  EXPECT_EQ(testing::oracle_trial(testing::trial_events(ds, 0), ds.elts, ds.layers[0]), 150.0);
}

TEST(RunTrial, EmptyTrialIsZero) {
  auto ds = worked_example();
  ds.yet.add_trial(std::span<const EventOccurrence>{});
  LossStoreSet<double> stores(ds);
  TrialWorkspace<double> ws;
  EXPECT_EQ(run_trial<double>(ds.yet.trial(1), stores.layer(0), ws, 4), 0.0);
}

TEST(RunTrial, EventAbsentFromEveryEltContributesNothing) {
  auto ds = worked_example();
  ds.yet = YearEventTable(5);
  ds.yet.add_trial(std::vector<EventOccurrence>{{EventId{4}, 0.1}, {EventId{5}, 0.2}});
  LossStoreSet<double> stores(ds);
  TrialWorkspace<double> ws;
  EXPECT_EQ(run_trial<double>(ds.yet.trial(0), stores.layer(0), ws, 8), 0.0);
}

TEST(RunTrial, MatchesOracleAcrossChunkSizes) {
  std::mt19937_64 rng(11);
  testing::InstanceShape shape;
  shape.max_events = 40;
  shape.max_catalogue = 30;
  shape.trials = 5;
  for (int i = 0; i < 200; ++i) {
    const auto ds = testing::random_instance(rng, shape);
    LossStoreSet<double> stores(ds);
    TrialWorkspace<double> ws;
    for (std::size_t t = 0; t < ds.yet.trial_count(); ++t) {
      const double expected = testing::oracle_trial(testing::trial_events(ds, t), ds.elts, ds.layers[0]);
      for (std::size_t chunk : {1, 3, 7, 64}) {
        const double got = run_trial<double>(ds.yet.trial(t), stores.layer(0), ws, chunk);
        ASSERT_EQ(std::memcmp(&got, &expected, sizeof got), 0)
            << "instance " << i << " trial " << t << " chunk " << chunk << ": " << got << " vs " << expected;
      }
    }
  }
}

TEST(RunTrial, InstrumentedResultEqualsPlainResult) {
  std::mt19937_64 rng(12);
  testing::InstanceShape shape;
  shape.max_events = 50;
  const auto ds = testing::random_instance(rng, shape);
  LossStoreSet<double> stores(ds);
  TrialWorkspace<double> ws;
  PhaseClock clock;
  const double plain = run_trial<double>(ds.yet.trial(0), stores.layer(0), ws, 8);
  const double timed = run_trial<double, true>(ds.yet.trial(0), stores.layer(0), ws, 8, &clock);
  EXPECT_EQ(plain, timed);
}

TEST(PartitionTrials, TenOverFour) {
  const auto r = partition_trials(10, 4);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[0], (TrialRange{0, 3}));
  EXPECT_EQ(r[1], (TrialRange{3, 6}));
  EXPECT_EQ(r[2], (TrialRange{6, 8}));
  EXPECT_EQ(r[3], (TrialRange{8, 10}));
}

TEST(PartitionTrials, CoversExactlyOnceAndBalanced) {
  for (std::size_t n : {0, 1, 3, 17, 1000}) {
    for (unsigned w : {1u, 2u, 3u, 4u, 7u, 64u}) {
      const auto r = partition_trials(n, w);
      ASSERT_EQ(r.size(), w);
      std::size_t next = 0, lo = n, hi = 0;
      for (const auto& range : r) {
        EXPECT_EQ(range.begin, next);
        next = range.end;
        lo = std::min(lo, range.size());
        hi = std::max(hi, range.size());
      }
      EXPECT_EQ(next, n);
      EXPECT_LE(hi - lo, 1u);
    }
  }
}

TEST(PartitionTrials, ZeroWorkersThrows) { EXPECT_THROW(partition_trials(5, 0), std::invalid_argument); }

TEST(RunAnalysis, WorkedExampleYlt) {
  auto ds = worked_example();
  ds.yet.add_trial(std::span<const EventOccurrence>{});
  const auto result = run_analysis(ds, {});
  ASSERT_EQ(result.ylt.layer_count(), 1u);
  ASSERT_EQ(result.ylt.trial_count(), 2u);
  EXPECT_EQ(result.ylt.at(0, 0), 150.0);
  EXPECT_EQ(result.ylt.at(0, 1), 0.0);
  EXPECT_EQ(result.ylt.layer_ids()[0], 0u);
}

TEST(RunAnalysis, RejectsBadConfig) {
  const auto ds = worked_example();
  EngineConfig c;
  c.worker_count = 0;
  EXPECT_THROW(run_analysis(ds, c), std::invalid_argument);
  c = {};
  c.chunk_size = 0;
  EXPECT_THROW(run_analysis(ds, c), std::invalid_argument);
}

TEST(RunAnalysis, RejectsInvalidDataset) {
  auto ds = worked_example();
  ds.layers[0].elts.push_back(9);
  try {
    (void)run_analysis(ds, {});
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.report().size(), 1u);
    EXPECT_EQ(e.report()[0].kind, ViolationKind::kUnknownElt);
  }
  EXPECT_THROW(run_analysis_serial(ds), ValidationError);
}

GenSpec small_spec(std::uint64_t seed) {
  GenSpec spec;
  spec.seed = seed;
  spec.trial_count = 301;
  spec.events_per_trial = 37;
  spec.catalogue_size = 2000;
  spec.elt_count = 5;
  spec.records_per_elt = 300;
  spec.layer_count = 3;
  spec.elts_per_layer = 3;
  return spec;
}

TEST(RunAnalysis, ParallelEqualsSerialForAnyWorkersAndChunk) {
  const auto ds = generate(small_spec(5));
  const auto reference = run_analysis_serial(ds).ylt;
  for (unsigned w : {1u, 2u, 3u, 4u, 8u}) {
    for (std::size_t chunk : {1u, 5u, 256u}) {
      EngineConfig c;
      c.worker_count = w;
      c.chunk_size = chunk;
      EXPECT_EQ(run_analysis(ds, c).ylt, reference) << "workers " << w << " chunk " << chunk;
    }
  }
}

TEST(RunAnalysis, MoreWorkersThanTrials) {
  auto spec = small_spec(6);
  spec.trial_count = 3;
  const auto ds = generate(spec);
  EngineConfig c;
  c.worker_count = 8;
  EXPECT_EQ(run_analysis(ds, c).ylt, run_analysis_serial(ds).ylt);
}

TEST(RunAnalysis, SinglePrecisionSerialAndParallelAgree) {
  const auto ds = generate(small_spec(7));
  EngineConfig c;
  c.precision = Precision::kSingle;
  c.worker_count = 3;
  c.chunk_size = 16;
  EXPECT_EQ(run_analysis(ds, c).ylt, run_analysis_serial(ds, c).ylt);
}

TEST(RunAnalysis, TimingsPopulatedOnlyWhenInstrumented) {
  const auto ds = generate(small_spec(8));
  EngineConfig c;
  const auto plain = run_analysis(ds, c);
  EXPECT_GT(plain.timings.total.count(), 0.0);
  EXPECT_EQ(plain.timings.accounted().count(), 0.0);

  c.instrumented = true;
  c.worker_count = 2;
  const auto timed = run_analysis(ds, c);
  EXPECT_EQ(timed.ylt, plain.ylt);
  EXPECT_GT(timed.timings.loss_lookup.count(), 0.0);
  EXPECT_LE(timed.timings.accounted().count(), timed.timings.total.count());
  EXPECT_GE(timed.timings.orchestration().count(), 0.0);
}

}  // namespace
}  // namespace ara
