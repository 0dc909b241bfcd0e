// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ara/datagen.hpp"
#include "ara/io.hpp"
#include "ara/metrics.hpp"

namespace ara::cli {

namespace {

namespace fs = std::filesystem;

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double seconds(PhaseTimings::Duration d) { return d.count(); }

double percent(PhaseTimings::Duration part, PhaseTimings::Duration whole) {
  return whole.count() > 0 ? 100.0 * part.count() / whole.count() : 0.0;
}

Precision parse_precision(const std::string& s) {
  if (s == "double") return Precision::kDouble;
  if (s == "single") return Precision::kSingle;
  throw CLI::ValidationError("--precision", "must be double or single");
}

struct GenFlags {
  std::string preset;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "binary";
  // Explicit values override the preset.
  std::optional<std::size_t> trials, events_per_trial, elts, records_per_elt, layers, elts_per_layer;
  std::optional<std::uint32_t> catalogue_size;
  std::optional<double> loss_min, loss_max;
};

struct RunFlags {
  std::string dataset;
  unsigned workers = 1;
  std::size_t chunk_size = 256;
  std::string precision = "double";
  bool instrument = false;
  std::string out;
};

struct BenchFlags {
  std::string dataset;
  std::vector<unsigned> sweep{1, 2, 4};
  std::size_t chunk_size = 256;
  std::string precision = "double";
  unsigned repeats = 1;
  bool no_profile = false;
  std::string report;
};

struct MetricsFlags {
  std::string ylt;
  std::vector<double> pml;
  std::vector<double> tvar;
  std::string scope = "portfolio";
};

int cmd_gen(const GenFlags& f, std::ostream& out) {
  GenSpec spec;
  if (f.preset == "standard") {
    spec = standard_workload(f.seed);
  } else if (!f.preset.empty()) {
    throw CLI::ValidationError("--preset", "unknown preset '" + f.preset + "' (available: standard)");
  }
  spec.seed = f.seed;
  if (f.trials) spec.trial_count = *f.trials;
  if (f.events_per_trial) spec.events_per_trial = *f.events_per_trial;
  if (f.catalogue_size) spec.catalogue_size = *f.catalogue_size;
  if (f.elts) spec.elt_count = *f.elts;
  if (f.records_per_elt) spec.records_per_elt = *f.records_per_elt;
  if (f.layers) spec.layer_count = *f.layers;
  if (f.elts_per_layer) spec.elts_per_layer = *f.elts_per_layer;
  if (f.loss_min) spec.loss_range.min = *f.loss_min;
  if (f.loss_max) spec.loss_range.max = *f.loss_max;
  try {
    check_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("gen", e.what());
  }
  const auto format = io::parse_format(f.format);
  const Dataset ds = generate(spec);
  io::write_dataset(f.out, ds, format, spec.seed);
  out << "wrote " << ds.yet.trial_count() << " trials (" << ds.yet.occurrence_count() << " occurrences), "
      << ds.elts.size() << " ELTs, " << ds.layers.size() << " layers to " << f.out << " [" << io::to_string(format)
      << "]\n";
  return kOk;
}

int cmd_run(const RunFlags& f, std::ostream& out) {
  EngineConfig config;
  config.worker_count = f.workers;
  config.chunk_size = f.chunk_size;
  config.precision = parse_precision(f.precision);
  config.instrumented = f.instrument;

  const Dataset ds = io::read_dataset(f.dataset);
  const auto result = run_analysis(ds, config);
  io::write_ylt(f.out, result.ylt);
  out << "analysed " << ds.layers.size() << " layer(s) x " << ds.yet.trial_count() << " trials with "
      << config.worker_count << " worker(s), chunk " << config.chunk_size << ", " << to_string(config.precision)
      << " precision in " << std::fixed << std::setprecision(3) << seconds(result.timings.total) << " s\n";
  out.unsetf(std::ios::floatfield);
  if (config.instrumented) print_phase_table(result.timings, out);
  out << "year loss table written to " << f.out << "\n";
  return kOk;
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  BenchOptions options;
  options.workers_sweep = f.sweep;
  options.chunk_size = f.chunk_size;
  options.precision = parse_precision(f.precision);
  options.repeats = f.repeats;
  options.profile = !f.no_profile;

  const Dataset ds = io::read_dataset(f.dataset);
  const auto report = run_bench(ds, options, err);
  print_bench_table(report, out);
  out << "\n";
  print_bench_kv(report, out);
  if (!f.report.empty()) {
    std::ofstream file(f.report);
    if (!file) throw io::Error(io::ErrorKind::kOpen, f.report, "cannot open report for writing");
    print_bench_kv(report, file);
  }
  return kOk;
}

int cmd_metrics(const MetricsFlags& f, std::ostream& out) {
  const auto ylt = io::read_ylt(f.ylt);
  if (ylt.empty()) throw std::invalid_argument("year loss table " + f.ylt + " is empty");

  LossDistribution dist;
  if (f.scope == "portfolio") {
    dist = LossDistribution::for_portfolio(ylt);
  } else if (f.scope.starts_with("layer:")) {
    std::uint32_t id = 0;
    const auto digits = std::string_view(f.scope).substr(6);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
      throw CLI::ValidationError("--scope", "expected layer:N or portfolio");
    }
    dist = LossDistribution::for_layer(ylt, id);
  } else {
    throw CLI::ValidationError("--scope", "expected layer:N or portfolio");
  }

  out << "scope=" << f.scope << "\n";
  out << "trials=" << dist.size() << "\n";
  out << "expected_loss=" << shortest(expected_loss(dist)) << "\n";
  for (double p : f.pml) out << "pml@" << shortest(p) << "=" << shortest(pml(dist, p)) << "\n";
  for (double p : f.tvar) out << "tvar@" << shortest(p) << "=" << shortest(tvar(dist, p)) << "\n";
  return kOk;
}

int cmd_validate(const std::string& dir, std::ostream& out) {
  const Dataset ds = io::read_dataset(dir);
  const auto report = validate_dataset(ds);
  out << format_report(report) << "\n";
  return report.empty() ? kOk : kValidation;
}

}  // namespace

BenchReport run_bench(const Dataset& dataset, const BenchOptions& options, std::ostream& warnings) {
  if (options.workers_sweep.empty()) throw std::invalid_argument("workers sweep is empty");
  if (options.repeats == 0) throw std::invalid_argument("repeats must be >= 1");

  BenchReport report;
  report.options = options;
  report.machine = describe_machine();
  report.trial_count = dataset.yet.trial_count();
  report.occurrence_count = dataset.yet.occurrence_count();
  report.layer_count = dataset.layers.size();

  for (unsigned w : options.workers_sweep) {
    if (w > report.machine.logical_cores) {
      warnings << "warning: " << w << " workers exceeds the " << report.machine.logical_cores
               << " available core(s); running oversubscribed\n";
    }
    EngineConfig config{w, options.chunk_size, options.precision, false};
    SweepPoint point;
    point.workers = w;
    point.total_s = std::numeric_limits<double>::infinity();
    for (unsigned r = 0; r < options.repeats; ++r) {
      point.total_s = std::min(point.total_s, seconds(run_analysis(dataset, config).timings.total));
    }
    if (options.profile) {
      config.instrumented = true;
      point.profile = run_analysis(dataset, config).timings;
    }
    report.points.push_back(point);
  }

  const auto& sweep = options.workers_sweep;
  const auto base_it = std::find(sweep.begin(), sweep.end(), 1u);
  const std::size_t base = base_it == sweep.end() ? 0 : static_cast<std::size_t>(base_it - sweep.begin());
  report.baseline_workers = sweep[base];
  const double base_total = report.points[base].total_s;
  for (auto& p : report.points) p.speedup = p.total_s > 0 ? base_total / p.total_s : 0.0;
  return report;
}

void print_phase_table(const PhaseTimings& t, std::ostream& out) {
  const auto total = t.total;
  const std::pair<const char*, PhaseTimings::Duration> rows[] = {
      {"fetch events", t.fetch_events},         {"loss lookup", t.loss_lookup},
      {"financial terms", t.financial_terms},   {"occurrence terms", t.occurrence_terms},
      {"aggregate terms", t.aggregate_terms},   {"orchestration", t.orchestration()},
  };
  out << std::left << std::setw(18) << "phase" << std::right << std::setw(12) << "seconds" << std::setw(9) << "share"
      << "\n";
  for (const auto& [name, d] : rows) {
    out << std::left << std::setw(18) << name << std::right << std::fixed << std::setprecision(4) << std::setw(12)
        << seconds(d) << std::setprecision(1) << std::setw(8) << percent(d, total) << "%\n";
  }
  out << std::left << std::setw(18) << "total" << std::right << std::setprecision(4) << std::setw(12)
      << seconds(total) << "\n";
  out.unsetf(std::ios::floatfield);
  out << std::right;
}

void print_bench_table(const BenchReport& r, std::ostream& out) {
  out << "machine: " << r.machine.logical_cores << " logical / " << r.machine.physical_cores
      << " physical core(s)\n";
  out << "workload: " << r.layer_count << " layer(s), " << r.trial_count << " trials, " << r.occurrence_count
      << " occurrences; chunk " << r.options.chunk_size << ", " << to_string(r.options.precision)
      << " precision, best of " << r.options.repeats << "\n\n";
  out << std::setw(8) << "workers" << std::setw(11) << "total_s" << std::setw(9) << "speedup";
  if (r.options.profile) {
    out << std::setw(8) << "fetch%" << std::setw(9) << "lookup%" << std::setw(8) << "fin%" << std::setw(8) << "occ%"
        << std::setw(8) << "agg%" << std::setw(9) << "other%" << std::setw(12) << "overhead_s";
  }
  out << "\n" << std::fixed;
  for (const auto& p : r.points) {
    out << std::setw(8) << p.workers << std::setprecision(4) << std::setw(11) << p.total_s << std::setprecision(2)
        << std::setw(9) << p.speedup;
    if (r.options.profile) {
      const auto& t = p.profile;
      out << std::setprecision(1) << std::setw(8) << percent(t.fetch_events, t.total) << std::setw(9)
          << percent(t.loss_lookup, t.total) << std::setw(8) << percent(t.financial_terms, t.total) << std::setw(8)
          << percent(t.occurrence_terms, t.total) << std::setw(8) << percent(t.aggregate_terms, t.total)
          << std::setw(9) << percent(t.orchestration(), t.total) << std::setprecision(4) << std::setw(12)
          << seconds(t.total) - p.total_s;
    }
    out << "\n";
  }
  out.unsetf(std::ios::floatfield);
}

void print_bench_kv(const BenchReport& r, std::ostream& out) {
  auto kv = [&](const std::string& key, const std::string& value) { out << key << '=' << value << '\n'; };
  kv("machine.logical_cores", std::to_string(r.machine.logical_cores));
  kv("machine.physical_cores", std::to_string(r.machine.physical_cores));
  kv("workload.layers", std::to_string(r.layer_count));
  kv("workload.trials", std::to_string(r.trial_count));
  kv("workload.occurrences", std::to_string(r.occurrence_count));
  kv("config.chunk_size", std::to_string(r.options.chunk_size));
  kv("config.precision", std::string(to_string(r.options.precision)));
  kv("config.repeats", std::to_string(r.options.repeats));
  kv("baseline.workers", std::to_string(r.baseline_workers));
  for (const auto& p : r.points) {
    const std::string k = "w" + std::to_string(p.workers) + ".";
    kv(k + "total_s", shortest(p.total_s));
    kv(k + "speedup", shortest(p.speedup));
    if (!r.options.profile) continue;
    const auto& t = p.profile;
    kv(k + "profile.total_s", shortest(seconds(t.total)));
    kv(k + "profile.fetch_events_s", shortest(seconds(t.fetch_events)));
    kv(k + "profile.loss_lookup_s", shortest(seconds(t.loss_lookup)));
    kv(k + "profile.financial_terms_s", shortest(seconds(t.financial_terms)));
    kv(k + "profile.occurrence_terms_s", shortest(seconds(t.occurrence_terms)));
    kv(k + "profile.aggregate_terms_s", shortest(seconds(t.aggregate_terms)));
    kv(k + "profile.orchestration_s", shortest(seconds(t.orchestration())));
    kv(k + "share.fetch_events_pct", shortest(percent(t.fetch_events, t.total)));
    kv(k + "share.loss_lookup_pct", shortest(percent(t.loss_lookup, t.total)));
    kv(k + "share.financial_terms_pct", shortest(percent(t.financial_terms, t.total)));
    kv(k + "share.occurrence_terms_pct", shortest(percent(t.occurrence_terms, t.total)));
    kv(k + "share.aggregate_terms_pct", shortest(percent(t.aggregate_terms, t.total)));
    kv(k + "share.orchestration_pct", shortest(percent(t.orchestration(), t.total)));
    kv(k + "instrumentation_overhead_s", shortest(seconds(t.total) - p.total_s));
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Aggregate risk analysis: dataset generation, simulation, benchmarking and risk metrics", "ara"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic dataset");
  g->add_option("--preset", gen.preset, "Start from a named preset (standard)");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--trials", gen.trials, "Number of trials");
  g->add_option("--events-per-trial", gen.events_per_trial, "Event occurrences per trial");
  g->add_option("--catalogue-size", gen.catalogue_size, "Event catalogue size")->check(CLI::PositiveNumber);
  g->add_option("--elts", gen.elts, "Number of event loss tables");
  g->add_option("--records-per-elt", gen.records_per_elt, "Records per ELT");
  g->add_option("--layers", gen.layers, "Number of layers");
  g->add_option("--elts-per-layer", gen.elts_per_layer, "ELTs covered by each layer");
  g->add_option("--loss-min", gen.loss_min, "Smallest recorded loss");
  g->add_option("--loss-max", gen.loss_max, "Largest recorded loss");
  g->add_option("--out", gen.out, "Output directory")->required();
  g->add_option("--format", gen.format, "text or binary")->check(CLI::IsMember({"text", "binary"}));

  RunFlags runf;
  auto* r = app.add_subcommand("run", "Run the analysis and write the year loss table");
  r->add_option("dataset", runf.dataset, "Dataset directory")->required();
  r->add_option("--workers", runf.workers, "Worker threads")->check(CLI::PositiveNumber);
  r->add_option("--chunk-size", runf.chunk_size, "Events per processing block")->check(CLI::PositiveNumber);
  r->add_option("--precision", runf.precision, "double or single")->check(CLI::IsMember({"double", "single"}));
  r->add_flag("--instrument", runf.instrument, "Collect and print per-phase timings");
  r->add_option("--out", runf.out, "Year loss table file (.csv for text, anything else binary)")->required();

  BenchFlags bench;
  auto* b = app.add_subcommand("bench", "Time the analysis over a sweep of worker counts");
  b->add_option("dataset", bench.dataset, "Dataset directory")->required();
  b->add_option("--workers-sweep", bench.sweep, "Comma-separated worker counts")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  b->add_option("--chunk-size", bench.chunk_size, "Events per processing block")->check(CLI::PositiveNumber);
  b->add_option("--precision", bench.precision, "double or single")->check(CLI::IsMember({"double", "single"}));
  b->add_option("--repeats", bench.repeats, "Timed repetitions per sweep point (best is kept)")
      ->check(CLI::PositiveNumber);
  b->add_flag("--no-profile", bench.no_profile, "Skip the instrumented run per sweep point");
  b->add_option("--report", bench.report, "Also write the key=value report to this file");

  MetricsFlags metrics;
  auto* m = app.add_subcommand("metrics", "Risk metrics from a year loss table");
  m->add_option("ylt", metrics.ylt, "Year loss table file")->required();
  m->add_option("--pml", metrics.pml, "Probabilities for PML, comma-separated")->delimiter(',');
  m->add_option("--tvar", metrics.tvar, "Probabilities for TVaR, comma-separated")->delimiter(',');
  m->add_option("--scope", metrics.scope, "portfolio or layer:N");

  std::string validate_dir;
  auto* v = app.add_subcommand("validate", "Check a dataset's invariants");
  v->add_option("dataset", validate_dir, "Dataset directory")->required();

  try {
    app.parse(argc, argv);
    if (g->parsed()) return cmd_gen(gen, out);
    if (r->parsed()) return cmd_run(runf, out);
    if (b->parsed()) return cmd_bench(bench, out, err);
    if (m->parsed()) return cmd_metrics(metrics, out);
    if (v->parsed()) return cmd_validate(validate_dir, out);
    return kUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const io::Error& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ara");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ara::cli
