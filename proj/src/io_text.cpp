// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

// CSV dataset and YLT files. Every file starts with a header line; numbers use
// the shortest decimal form that reads back to the same double, and an empty
// limit field means "unlimited".

#include <algorithm>
#include <limits>

#include "io_internal.hpp"

namespace ara::io::detail {

namespace {

constexpr char kYetName[] = "yet.csv";
constexpr char kEltTermsName[] = "elts.csv";
constexpr char kEltRecordsName[] = "elt_records.csv";
constexpr char kLayersName[] = "layers.csv";

constexpr std::string_view kYetHeader = "trial_id,event_id,timestamp";
constexpr std::string_view kEltTermsHeader = "elt_id,exchange_rate,retention,limit";
constexpr std::string_view kEltRecordsHeader = "elt_id,event_id,loss";
constexpr std::string_view kLayersHeader = "layer_id,occ_retention,occ_limit,agg_retention,agg_limit,elts";
constexpr std::string_view kYltHeader = "layer_id,trial_id,loss";
constexpr std::string_view kYltPreamble = "# ara-ylt format_version=";

void append_optional(std::string& out, const std::optional<double>& v) {
  if (v) append_double(out, *v);
}

void expect_header(LineSource& src, std::string& line, std::string_view header) {
  if (!src.next(line)) throw Error(ErrorKind::kTruncated, src.path(), "missing header line");
  if (line != header) {
    throw Error(ErrorKind::kMalformed, src.path(), "unexpected header '" + line + "'");
  }
}

std::uint32_t to_u32(std::uint64_t v, FieldReader& f, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) f.fail(std::string(what) + " does not fit in 32 bits");
  return static_cast<std::uint32_t>(v);
}

YearEventTable read_yet(const fs::path& path, const DatasetManifest& m) {
  LineSource src(path);
  std::string line;
  expect_header(src, line, kYetHeader);
  std::vector<std::uint64_t> offsets(m.trial_count + 1, 0);
  std::vector<EventId> events;
  std::vector<double> timestamps;
  events.reserve(m.occurrence_count);
  timestamps.reserve(m.occurrence_count);
  std::uint64_t current = 0;
  while (src.next(line)) {
    FieldReader f(line, path, src.line_no());
    const auto trial = f.next_uint();
    const auto event = to_u32(f.next_uint(), f, "event id");
    const auto ts = f.next_double();
    f.expect_end();
    if (trial >= m.trial_count || trial < current) f.fail("trial ids must be grouped ascending and < trial_count");
    for (; current < trial; ++current) offsets[current + 1] = events.size();
    events.push_back(EventId{event});
    timestamps.push_back(ts);
  }
  for (; current < m.trial_count; ++current) offsets[current + 1] = events.size();
  if (events.size() != m.occurrence_count) {
    throw Error(ErrorKind::kMalformed, path,
                "expected " + std::to_string(m.occurrence_count) + " occurrences, found " + std::to_string(events.size()));
  }
  return YearEventTable(m.catalogue_size, std::move(offsets), std::move(events), std::move(timestamps));
}

std::vector<EventLossTable> read_elts(const fs::path& dir, const DatasetManifest& m) {
  std::vector<EventLossTable> elts(m.elt_count);
  std::string line;
  {
    const auto path = dir / kEltTermsName;
    LineSource src(path);
    expect_header(src, line, kEltTermsHeader);
    std::uint64_t expected = 0;
    while (src.next(line)) {
      FieldReader f(line, path, src.line_no());
      if (f.next_uint() != expected || expected >= m.elt_count) f.fail("ELT ids must be 0..elt_count-1 in order");
      auto& t = elts[expected++].terms;
      t.exchange_rate = f.next_double();
      t.retention = f.next_double();
      t.limit = f.next_optional_double();
      f.expect_end();
    }
    if (expected != m.elt_count) throw Error(ErrorKind::kMalformed, path, "ELT count differs from manifest");
  }
  {
    const auto path = dir / kEltRecordsName;
    LineSource src(path);
    expect_header(src, line, kEltRecordsHeader);
    std::uint64_t last = 0;
    while (src.next(line)) {
      FieldReader f(line, path, src.line_no());
      const auto elt = f.next_uint();
      if (elt >= m.elt_count || elt < last) f.fail("ELT ids must be grouped ascending and < elt_count");
      last = elt;
      const auto event = to_u32(f.next_uint(), f, "event id");
      const auto loss = f.next_double();
      f.expect_end();
      elts[elt].records.push_back({EventId{event}, loss});
    }
  }
  return elts;
}

std::vector<Layer> read_layers(const fs::path& path, const DatasetManifest& m) {
  LineSource src(path);
  std::string line;
  expect_header(src, line, kLayersHeader);
  std::vector<Layer> layers;
  while (src.next(line)) {
    FieldReader f(line, path, src.line_no());
    Layer layer;
    layer.id = to_u32(f.next_uint(), f, "layer id");
    layer.terms.occ_retention = f.next_double();
    layer.terms.occ_limit = f.next_optional_double();
    layer.terms.agg_retention = f.next_double();
    layer.terms.agg_limit = f.next_optional_double();
    auto list = f.next_raw();
    f.expect_end();
    while (!list.empty()) {
      const auto semi = list.find(';');
      const auto item = list.substr(0, semi);
      std::uint32_t e = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), e);
      if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty()) f.fail("bad ELT list");
      layer.elts.push_back(e);
      list = semi == std::string_view::npos ? std::string_view{} : list.substr(semi + 1);
    }
    layers.push_back(std::move(layer));
  }
  if (layers.size() != m.layer_count) throw Error(ErrorKind::kMalformed, path, "layer count differs from manifest");
  return layers;
}

}  // namespace

std::map<std::string, FileDigest> write_text_dataset(const fs::path& dir, const Dataset& ds) {
  std::map<std::string, FileDigest> files;
  std::string row;
  {
    FileSink out(dir / kYetName);
    out.write(kYetHeader);
    out.write("\n");
    for (std::size_t t = 0; t < ds.yet.trial_count(); ++t) {
      const auto trial = ds.yet.trial(t);
      for (std::size_t k = 0; k < trial.size(); ++k) {
        row.clear();
        append_int(row, t);
        row += ',';
        append_int(row, trial.events[k].value);
        row += ',';
        append_double(row, trial.timestamps[k]);
        row += '\n';
        out.write(row);
      }
    }
    files[kYetName] = out.finish();
  }
  {
    FileSink terms(dir / kEltTermsName);
    FileSink records(dir / kEltRecordsName);
    terms.write(kEltTermsHeader);
    terms.write("\n");
    records.write(kEltRecordsHeader);
    records.write("\n");
    for (std::size_t e = 0; e < ds.elts.size(); ++e) {
      const auto& elt = ds.elts[e];
      row.clear();
      append_int(row, e);
      row += ',';
      append_double(row, elt.terms.exchange_rate);
      row += ',';
      append_double(row, elt.terms.retention);
      row += ',';
      append_optional(row, elt.terms.limit);
      row += '\n';
      terms.write(row);
      for (const auto& rec : elt.records) {
        row.clear();
        append_int(row, e);
        row += ',';
        append_int(row, rec.event.value);
        row += ',';
        append_double(row, rec.loss);
        row += '\n';
        records.write(row);
      }
    }
    files[kEltTermsName] = terms.finish();
    files[kEltRecordsName] = records.finish();
  }
  {
    FileSink out(dir / kLayersName);
    out.write(kLayersHeader);
    out.write("\n");
    for (const auto& layer : ds.layers) {
      row.clear();
      append_int(row, layer.id);
      row += ',';
      append_double(row, layer.terms.occ_retention);
      row += ',';
      append_optional(row, layer.terms.occ_limit);
      row += ',';
      append_double(row, layer.terms.agg_retention);
      row += ',';
      append_optional(row, layer.terms.agg_limit);
      row += ',';
      for (std::size_t k = 0; k < layer.elts.size(); ++k) {
        if (k) row += ';';
        append_int(row, layer.elts[k]);
      }
      row += '\n';
      out.write(row);
    }
    files[kLayersName] = out.finish();
  }
  return files;
}

Dataset read_text_dataset(const fs::path& dir, const DatasetManifest& m) {
  for (const char* name : {kYetName, kEltTermsName, kEltRecordsName, kLayersName}) {
    if (!m.files.contains(name)) throw Error(ErrorKind::kMalformed, dir / kManifestName, std::string("missing entry for ") + name);
  }
  Dataset ds;
  ds.yet = read_yet(dir / kYetName, m);
  ds.elts = read_elts(dir, m);
  ds.layers = read_layers(dir / kLayersName, m);
  return ds;
}

// Text YLT: a preamble line with the shape, the column header, one row per
// (layer, trial) in row-major order, then a CRC-32 line covering every byte
// before it.
void write_text_ylt(const fs::path& path, const YearLossTable& ylt) {
  std::string body;
  body += kYltPreamble;
  append_int(body, kFormatVersion);
  body += " layers=";
  append_int(body, ylt.layer_count());
  body += " trials=";
  append_int(body, ylt.trial_count());
  body += " layer_ids=";
  for (std::size_t r = 0; r < ylt.layer_count(); ++r) {
    if (r) body += ';';
    append_int(body, ylt.layer_ids()[r]);
  }
  body += '\n';
  body += kYltHeader;
  body += '\n';
  for (std::size_t r = 0; r < ylt.layer_count(); ++r) {
    const auto values = ylt.row(r);
    for (std::size_t t = 0; t < values.size(); ++t) {
      append_int(body, ylt.layer_ids()[r]);
      body += ',';
      append_int(body, t);
      body += ',';
      append_double(body, values[t]);
      body += '\n';
    }
  }
  char crc[32];
  std::snprintf(crc, sizeof crc, "# crc32=%08x\n", crc32_of(body));
  FileSink out(path);
  out.write(body);
  out.write(crc);
  out.finish();
}

YearLossTable read_text_ylt(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kOpen, path, "cannot open for reading");
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::string_view all(content);
  if (!all.starts_with(kYltPreamble)) throw Error(ErrorKind::kMalformed, path, "not a year loss table file");
  const auto trailer_pos = all.rfind("# crc32=");
  if (trailer_pos == std::string_view::npos || trailer_pos == 0 || !all.ends_with('\n')) {
    throw Error(ErrorKind::kTruncated, path, "missing checksum trailer");
  }
  const auto body = all.substr(0, trailer_pos);
  const auto hex = all.substr(trailer_pos + 8, all.size() - trailer_pos - 9);
  std::uint32_t expected = 0;
  auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), expected, 16);
  if (ec != std::errc{} || ptr != hex.data() + hex.size()) throw Error(ErrorKind::kMalformed, path, "bad checksum trailer");

  std::uint64_t version = 0, layers = 0, trials = 0;
  const auto preamble_end = body.find('\n');
  std::string pre(body.substr(kYltPreamble.size(), preamble_end - kYltPreamble.size()));
  int consumed = 0;
  if (std::sscanf(pre.c_str(), "%lu layers=%lu trials=%lu layer_ids=%n", &version, &layers, &trials, &consumed) != 3 ||
      consumed == 0) {
    throw Error(ErrorKind::kMalformed, path, "bad preamble");
  }
  if (version != static_cast<std::uint64_t>(kFormatVersion)) {
    throw Error(ErrorKind::kUnknownVersion, path, "format_version " + std::to_string(version) + " is not supported");
  }
  if (crc32_of(body) != expected) throw Error(ErrorKind::kChecksum, path, "CRC-32 mismatch");

  std::vector<std::uint32_t> ids;
  if (layers > 0) {
    FieldReader f(std::string_view(pre).substr(static_cast<std::size_t>(consumed)), path, 1, ';');
    for (std::uint64_t r = 0; r < layers; ++r) ids.push_back(to_u32(f.next_uint(), f, "layer id"));
    f.expect_end();
  } else if (static_cast<std::size_t>(consumed) != pre.size()) {
    throw Error(ErrorKind::kMalformed, path, "layer ids listed for an empty table");
  }
  std::vector<double> values(layers * trials);
  std::string_view rest = body.substr(preamble_end + 1);
  std::uint64_t line_no = 1;
  auto next_line = [&]() -> std::string_view {
    ++line_no;
    const auto nl = std::find(rest.begin(), rest.end(), '\n');
    const std::string_view line(rest.begin(), nl);
    rest = nl == rest.end() ? std::string_view{} : std::string_view(nl + 1, rest.end());
    return line;
  };
  if (rest.empty() || next_line() != kYltHeader) throw Error(ErrorKind::kMalformed, path, "bad column header");
  for (std::uint64_t i = 0; i < layers * trials; ++i) {
    if (rest.empty()) throw Error(ErrorKind::kTruncated, path, "fewer rows than declared");
    FieldReader f(next_line(), path, line_no);
    const auto id = f.next_uint();
    const auto t = f.next_uint();
    const auto v = f.next_double();
    f.expect_end();
    const auto r = i / trials;
    if (t != i % trials) f.fail("rows out of order");
    if (id != ids[r]) f.fail("layer id does not match the preamble");
    values[i] = v;
  }
  if (!rest.empty()) throw Error(ErrorKind::kMalformed, path, "more rows than declared");

  YearLossTable ylt(std::move(ids), trials);
  for (std::size_t r = 0; r < ylt.layer_count(); ++r) {
    auto row = ylt.row(r);
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(r * trials), trials, row.begin());
  }
  return ylt;
}

}  // namespace ara::io::detail
