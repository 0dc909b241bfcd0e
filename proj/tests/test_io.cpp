// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <functional>
#include <random>

#include <unistd.h>

#include "ara/datagen.hpp"
#include "ara/engine.hpp"
#include "ara/io.hpp"

namespace ara {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("ara_io_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static Dataset sample() {
    GenSpec spec;
    spec.seed = 17;
    spec.trial_count = 50;
    spec.events_per_trial = 12;
    spec.catalogue_size = 400;
    spec.elt_count = 3;
    spec.records_per_elt = 120;
    spec.layer_count = 2;
    spec.elts_per_layer = 2;
    auto ds = generate(spec);
    ds.layers[1].terms.agg_limit.reset();  // exercise the "unlimited" encoding
    ds.elts[0].terms.limit = 12345.678901234567;
    return ds;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }
  static void spit(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << s;
  }

  static io::ErrorKind error_of(const std::function<void()>& f) {
    try {
      f();
    } catch (const io::Error& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no io::Error thrown";
    return io::ErrorKind::kOpen;
  }

  fs::path dir_;
};

TEST_F(IoTest, DatasetRoundTripBothFormats) {
  const auto ds = sample();
  for (auto format : {io::Format::kText, io::Format::kBinary}) {
    const auto d = dir_ / std::string(io::to_string(format));
    io::write_dataset(d, ds, format, 17);
    EXPECT_EQ(io::read_dataset(d), ds) << io::to_string(format);
    const auto m = io::read_manifest(d);
    EXPECT_EQ(m.format, format);
    EXPECT_EQ(m.seed, 17u);
    EXPECT_EQ(m.trial_count, ds.yet.trial_count());
    EXPECT_EQ(m.occurrence_count, ds.yet.occurrence_count());
  }
}

TEST_F(IoTest, AwkwardDoublesSurviveText) {
  Dataset ds;
  ds.yet = YearEventTable(3);
  ds.yet.add_trial(std::vector<EventOccurrence>{{EventId{1}, 0.0}, {EventId{3}, 0.1 + 0.2}, {EventId{2}, 0x1.fffffffffffffp-1}});
  ds.yet.add_trial(std::span<const EventOccurrence>{});
  ds.elts.push_back({{{EventId{2}, 5e-324}, {EventId{3}, 1.7976931348623157e308}}, {1.0 / 3.0, 1e-300, std::nullopt}});
  ds.layers.push_back({42, {0}, {0.0, std::nullopt, 2.0 / 7.0, 1e300}});
  io::write_dataset(dir_ / "t", ds, io::Format::kText);
  EXPECT_EQ(io::read_dataset(dir_ / "t"), ds);
}

TEST_F(IoTest, SameInputSameBytes) {
  const auto ds = sample();
  for (auto format : {io::Format::kText, io::Format::kBinary}) {
    io::write_dataset(dir_ / "a", ds, format, 1);
    io::write_dataset(dir_ / "b", ds, format, 1);
    for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
      EXPECT_EQ(slurp(entry.path()), slurp(dir_ / "b" / entry.path().filename())) << entry.path();
    }
    fs::remove_all(dir_ / "a");
    fs::remove_all(dir_ / "b");
  }
}

TEST_F(IoTest, WriteRejectsInvalidDataset) {
  auto ds = sample();
  ds.elts[1].records[0].loss = -1.0;
  EXPECT_THROW(io::write_dataset(dir_ / "x", ds, io::Format::kText), ValidationError);
}

TEST_F(IoTest, UnknownVersionRejected) {
  io::write_dataset(dir_ / "d", sample(), io::Format::kText);
  auto manifest = slurp(dir_ / "d" / io::kManifestName);
  const auto pos = manifest.find("\"format_version\": 1");
  ASSERT_NE(pos, std::string::npos) << manifest;
  manifest.replace(pos, 19, "\"format_version\": 2");
  spit(dir_ / "d" / io::kManifestName, manifest);
  EXPECT_EQ(error_of([&] { (void)io::read_dataset(dir_ / "d"); }), io::ErrorKind::kUnknownVersion);
}

TEST_F(IoTest, TruncatedFileRejected) {
  for (auto format : {io::Format::kText, io::Format::kBinary}) {
    const auto d = dir_ / std::string(io::to_string(format));
    io::write_dataset(d, sample(), format);
    const auto victim = d / (format == io::Format::kText ? "yet.csv" : "dataset.bin");
    fs::resize_file(victim, fs::file_size(victim) / 2);
    EXPECT_EQ(error_of([&] { (void)io::read_dataset(d); }), io::ErrorKind::kTruncated) << io::to_string(format);
  }
}

TEST_F(IoTest, CorruptedByteRejected) {
  for (auto format : {io::Format::kText, io::Format::kBinary}) {
    const auto d = dir_ / std::string(io::to_string(format));
    io::write_dataset(d, sample(), format);
    const auto victim = d / (format == io::Format::kText ? "elt_records.csv" : "dataset.bin");
    auto bytes = slurp(victim);
    bytes[bytes.size() / 2] ^= 0x01;
    spit(victim, bytes);
    EXPECT_EQ(error_of([&] { (void)io::read_dataset(d); }), io::ErrorKind::kChecksum) << io::to_string(format);
  }
}

TEST_F(IoTest, MissingDirectoryIsOpenError) {
  EXPECT_EQ(error_of([&] { (void)io::read_dataset(dir_ / "nope"); }), io::ErrorKind::kOpen);
}

TEST_F(IoTest, YltRoundTripBothFormats) {
  const auto ds = sample();
  const auto ylt = run_analysis(ds, {}).ylt;
  for (const char* name : {"ylt.bin", "ylt.csv"}) {
    io::write_ylt(dir_ / name, ylt);
    EXPECT_EQ(io::read_ylt(dir_ / name), ylt) << name;
  }
  EXPECT_EQ(io::ylt_format_for("a/b.csv"), io::Format::kText);
  EXPECT_EQ(io::ylt_format_for("a/b.ylt"), io::Format::kBinary);
}

TEST_F(IoTest, YltCorruptionAndTruncation) {
  const auto ylt = run_analysis(sample(), {}).ylt;
  for (const char* name : {"ylt.bin", "ylt.csv"}) {
    io::write_ylt(dir_ / name, ylt);
    const auto good = slurp(dir_ / name);

    auto bad = good;
    bad[bad.size() / 2] = bad[bad.size() / 2] == '7' ? '8' : '7';
    spit(dir_ / name, bad);
    EXPECT_EQ(error_of([&] { (void)io::read_ylt(dir_ / name); }), io::ErrorKind::kChecksum) << name;

    spit(dir_ / name, good.substr(0, good.size() * 2 / 3));
    EXPECT_EQ(error_of([&] { (void)io::read_ylt(dir_ / name); }), io::ErrorKind::kTruncated) << name;
  }
}

TEST_F(IoTest, WorkedExampleAndEmptyYlts) {
  YearLossTable example({0}, 2);
  example.at(0, 0) = 150.0;
  YearLossTable empty({}, 0);
  YearLossTable no_trials({3, 4}, 0);
  for (const char* name : {"y.bin", "y.csv"}) {
    for (const auto* ylt : {&example, &empty, &no_trials}) {
      io::write_ylt(dir_ / name, *ylt);
      EXPECT_EQ(io::read_ylt(dir_ / name), *ylt) << name;
    }
  }
}

TEST_F(IoTest, TruncationErrorNamesTheFile) {
  io::write_dataset(dir_ / "d", sample(), io::Format::kText);
  fs::resize_file(dir_ / "d" / "yet.csv", 100);
  try {
    (void)io::read_dataset(dir_ / "d");
    FAIL() << "expected io::Error";
  } catch (const io::Error& e) {
    EXPECT_EQ(e.kind(), io::ErrorKind::kTruncated);
    EXPECT_EQ(e.path().filename(), "yet.csv");
    EXPECT_NE(std::string(e.what()).find("yet.csv"), std::string::npos) << e.what();
  }
}

TEST_F(IoTest, ParseFormat) {
  EXPECT_EQ(io::parse_format("text"), io::Format::kText);
  EXPECT_EQ(io::parse_format("binary"), io::Format::kBinary);
  EXPECT_THROW(io::parse_format("xml"), std::invalid_argument);
}

}  // namespace
}  // namespace ara
