// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ara/model.hpp"

namespace ara {

/// SplitMix64 (Steele, Lea and Flood's fixed-increment generator with Vigna's
/// finalizer constants). Output is fully specified, so datasets generated from
/// a seed are identical across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    return mix(z);
  }

  /// Uniform in [0, 1) with 53 random bits.
  constexpr double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi); returns lo exactly when lo == hi.
  constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  /// Integer in [0, bound) by 64x64->128 multiply-shift (Lemire, without the
  /// rejection step; bias is below 2^-32 for bound < 2^32).
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

enum class StreamDomain : std::uint64_t { kTrial = 1, kElt = 2, kLayer = 3 };

/// Seed of the substream used for entity `index` of `domain`:
/// mix(mix(seed ^ domain * golden) + index * golden). Every trial, ELT and layer
/// draws from its own substream, so generation order and thread count never
/// affect the output.
constexpr std::uint64_t substream_seed(std::uint64_t seed, StreamDomain domain, std::uint64_t index) noexcept {
  constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
  const std::uint64_t base = SplitMix64::mix(seed ^ (static_cast<std::uint64_t>(domain) * golden));
  return SplitMix64::mix(base + index * golden);
}

struct ValueRange {
  double min = 0.0;
  double max = 0.0;
};

/// Ranges the per-entity terms are drawn from. An absent limit range makes
/// that limit unlimited for every generated entity.
struct TermRanges {
  ValueRange exchange_rate{1.0, 1.0};
  ValueRange elt_retention{0.0, 0.0};
  std::optional<ValueRange> elt_limit;
  ValueRange occ_retention{0.0, 5.0e4};
  std::optional<ValueRange> occ_limit = ValueRange{1.5e6, 3.0e6};
  ValueRange agg_retention{0.0, 1.0e6};
  std::optional<ValueRange> agg_limit = ValueRange{5.0e6, 2.0e7};
};

struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t trial_count = 1000;
  std::size_t events_per_trial = 100;
  std::uint32_t catalogue_size = 10000;
  std::size_t elt_count = 4;
  std::size_t records_per_elt = 500;
  std::size_t layer_count = 2;
  std::size_t elts_per_layer = 3;
  ValueRange loss_range{1.0, 1.0e6};
  TermRanges terms;
};

/// 100,000 trials x 1,000 events over a 2,000,000 event catalogue, one layer
/// covering 15 ELTs of 20,000 records each.
GenSpec standard_workload(std::uint64_t seed);

/// Throws std::invalid_argument describing the first infeasible or
/// inconsistent field.
void check_spec(const GenSpec& spec);

/// Deterministic in `spec`; parallel across trials. The result always passes
/// validate_dataset.
Dataset generate(const GenSpec& spec);

}  // namespace ara
