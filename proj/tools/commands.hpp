// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ara/engine.hpp"
#include "ara/machine.hpp"
#include "ara/model.hpp"

namespace ara::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     // data or runtime errors not covered below
  kUsage = 2,       // bad flags or infeasible generator settings
  kValidation = 3,  // dataset violates a structural invariant
  kIo = 4,          // open, truncation, checksum, version or parse errors
};

/// Entry point shared by the `ara` binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::vector<unsigned> workers_sweep{1, 2, 4};
  std::size_t chunk_size = 256;
  Precision precision = Precision::kDouble;
  unsigned repeats = 1;
  bool profile = true;  // extra instrumented run per sweep point
};

struct SweepPoint {
  unsigned workers = 1;
  double total_s = 0.0;  // best uninstrumented wall-clock over the repeats
  double speedup = 1.0;  // baseline total / total
  PhaseTimings profile;  // instrumented run; all zero when profiling is off
};

struct BenchReport {
  BenchOptions options;
  MachineInfo machine;
  std::size_t trial_count = 0;
  std::size_t occurrence_count = 0;
  std::size_t layer_count = 0;
  unsigned baseline_workers = 1;
  std::vector<SweepPoint> points;
};

/// Runs the sweep. Speedups are relative to the 1-worker point, or to the
/// first sweep entry when 1 is not in the sweep.
BenchReport run_bench(const Dataset& dataset, const BenchOptions& options, std::ostream& warnings);

void print_bench_table(const BenchReport& report, std::ostream& out);
/// One `key=value` pair per line; see README for the key list.
void print_bench_kv(const BenchReport& report, std::ostream& out);

void print_phase_table(const PhaseTimings& timings, std::ostream& out);

}  // namespace ara::cli
