// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <algorithm>

#include "ara/model.hpp"

namespace ara {
namespace {

Dataset two_trial_dataset() {
  Dataset ds;
  ds.yet = YearEventTable(10);
  const std::vector<EventOccurrence> t0{{EventId{1}, 0.1}, {EventId{2}, 0.4}, {EventId{3}, 0.9}};
  const std::vector<EventOccurrence> t1{{EventId{5}, 0.2}, {EventId{9}, 0.3}};
  ds.yet.add_trial(t0);
  ds.yet.add_trial(t1);
  ds.elts.push_back({{{EventId{1}, 100.0}, {EventId{2}, 50.0}, {EventId{3}, 200.0}}, {}});
  ds.layers.push_back({0, {0}, {10.0, 100.0, 50.0, 150.0}});
  return ds;
}

bool has_kind(const ValidationReport& r, ViolationKind k) {
  return std::any_of(r.begin(), r.end(), [k](const Violation& v) { return v.kind == k; });
}

TEST(ValidateDataset, WellFormedDatasetHasEmptyReport) {
  auto ds = two_trial_dataset();
  EXPECT_TRUE(validate_dataset(ds).empty());
}

TEST(ValidateDataset, DescendingTimestampsReportOneOrderingViolation) {
  auto ds = two_trial_dataset();
  const std::vector<EventOccurrence> bad{{EventId{1}, 0.5}, {EventId{2}, 0.2}};
  ds.yet.add_trial(bad);
  const auto report = validate_dataset(ds);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, ViolationKind::kTimestampOrder);
  EXPECT_EQ(report[0].location, "trial 2, occurrence 1");
}

TEST(ValidateDataset, EltRecordWithReservedIdZero) {
  auto ds = two_trial_dataset();
  ds.elts[0].records.push_back({EventId{0}, 4.0});
  const auto report = validate_dataset(ds);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, ViolationKind::kInvalidEventId);
  EXPECT_EQ(report[0].location, "elt 0, record 3");
}

TEST(ValidateDataset, EachInvariantIsChecked) {
  auto ds = two_trial_dataset();
  ds.yet.add_trial(std::vector<EventOccurrence>{{EventId{11}, 1.0}});  // id > catalogue, ts == 1
  ds.elts[0].records.push_back({EventId{2}, 3.0});                     // duplicate id
  ds.elts[0].records.push_back({EventId{4}, 0.0});                     // zero loss
  ds.elts[0].terms.exchange_rate = 0.0;
  ds.layers.push_back({0, {}, {-1.0, std::nullopt, 0.0, std::nullopt}});  // dup id, empty, bad terms
  ds.layers.push_back({7, {3}, {}});                                       // unknown ELT

  const auto report = validate_dataset(ds);
  for (auto kind : {ViolationKind::kInvalidEventId, ViolationKind::kTimestampOutOfRange,
                    ViolationKind::kDuplicateEventId, ViolationKind::kNonPositiveLoss,
                    ViolationKind::kInvalidFinancialTerms, ViolationKind::kDuplicateLayerId, ViolationKind::kEmptyLayer,
                    ViolationKind::kInvalidLayerTerms, ViolationKind::kUnknownElt}) {
    EXPECT_TRUE(has_kind(report, kind)) << to_string(kind);
  }
  EXPECT_EQ(report.size(), 9u) << format_report(report);
}

TEST(ValidateDataset, ZeroCatalogueIsReported) {
  Dataset ds;
  EXPECT_TRUE(has_kind(validate_dataset(ds), ViolationKind::kInvalidCatalogue));
}

TEST(ValidateDataset, IsIdempotent) {
  auto ds = two_trial_dataset();
  ds.elts[0].records.push_back({EventId{0}, -1.0});
  const auto copy = ds;
  const auto first = validate_dataset(ds);
  const auto second = validate_dataset(ds);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].kind, second[i].kind);
    EXPECT_EQ(first[i].location, second[i].location);
  }
  EXPECT_EQ(ds, copy);
}

TEST(YearEventTable, FlatConstructorRejectsBadOffsets) {
  EXPECT_THROW(YearEventTable(5, {0, 3}, {EventId{1}, EventId{2}}, {0.1, 0.2}), std::invalid_argument);
  EXPECT_THROW(YearEventTable(5, {0, 2, 1, 2}, {EventId{1}, EventId{2}}, {0.1, 0.2}), std::invalid_argument);
  EXPECT_THROW(YearEventTable(5, {0, 1}, {EventId{1}}, {0.1, 0.2}), std::invalid_argument);
  const YearEventTable ok(5, {0, 0, 2}, {EventId{1}, EventId{2}}, {0.1, 0.2});
  EXPECT_EQ(ok.trial_count(), 2u);
  EXPECT_TRUE(ok.trial(0).empty());
  EXPECT_EQ(ok.trial(1).size(), 2u);
  EXPECT_EQ(ok.trial(1).id, 1u);
}

TEST(YearLossTable, RowLookupByLayerId) {
  YearLossTable ylt({4, 9}, 3);
  ylt.at(1, 2) = 7.5;
  EXPECT_EQ(ylt.row_of(9), 1u);
  EXPECT_FALSE(ylt.row_of(5).has_value());
  EXPECT_EQ(ylt.row(1)[2], 7.5);
  EXPECT_EQ(ylt.values().size(), 6u);
}

}  // namespace
}  // namespace ara
