// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include <zlib.h>

#include <cstdio>
#include <limits>
#include <nlohmann/json.hpp>

#include "io_internal.hpp"

namespace ara::io {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string_view to_string(Format f) noexcept { return f == Format::kBinary ? "binary" : "text"; }

Format parse_format(std::string_view name) {
  if (name == "text") return Format::kText;
  if (name == "binary") return Format::kBinary;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected text or binary)");
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kOpen: return "open";
    case ErrorKind::kTruncated: return "truncated";
    case ErrorKind::kChecksum: return "checksum";
    case ErrorKind::kUnknownVersion: return "unknown-version";
    case ErrorKind::kMalformed: return "malformed";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const fs::path& path, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " error in " + path.string() + ": " + detail),
      kind_(kind),
      path_(path) {}

namespace detail {

std::uint32_t crc32_of(std::string_view bytes, std::uint32_t crc) {
  // zlib takes uInt lengths; feed large buffers in pieces.
  constexpr std::size_t kStep = std::size_t{1} << 30;
  while (!bytes.empty()) {
    const auto n = std::min(bytes.size(), kStep);
    crc = static_cast<std::uint32_t>(
        ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(n)));
    bytes.remove_prefix(n);
  }
  return crc;
}

FileSink::FileSink(const fs::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw Error(ErrorKind::kOpen, path, "cannot open for writing");
  buffer_.reserve(1 << 20);
}

FileSink::~FileSink() {
  if (!finished_) {
    try {
      flush_buffer();
    } catch (...) {
    }
  }
}

void FileSink::flush_buffer() {
  if (buffer_.empty()) return;
  crc_ = crc32_of(buffer_, crc_);
  out_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
  bytes_ += buffer_.size();
  buffer_.clear();
  if (!out_) throw Error(ErrorKind::kOpen, path_, "write failed");
}

void FileSink::write(std::string_view bytes) {
  if (bytes.size() >= buffer_.capacity()) {
    flush_buffer();
    crc_ = crc32_of(bytes, crc_);
    out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    bytes_ += bytes.size();
    if (!out_) throw Error(ErrorKind::kOpen, path_, "write failed");
    return;
  }
  if (buffer_.size() + bytes.size() > buffer_.capacity()) flush_buffer();
  buffer_.append(bytes);
}

FileDigest FileSink::finish() {
  flush_buffer();
  out_.close();
  finished_ = true;
  if (!out_) throw Error(ErrorKind::kOpen, path_, "close failed");
  return {bytes_, crc_};
}

FileDigest digest_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kOpen, path, "cannot open for reading");
  std::string buf(1 << 20, '\0');
  FileDigest d;
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    d.crc32 = crc32_of(std::string_view(buf.data(), got), d.crc32);
    d.bytes += got;
  }
  return d;
}

void verify_digest(const fs::path& path, const FileDigest& expected) {
  const auto actual = digest_file(path);
  if (actual.bytes < expected.bytes) {
    throw Error(ErrorKind::kTruncated, path,
                "expected " + std::to_string(expected.bytes) + " bytes, found " + std::to_string(actual.bytes));
  }
  if (actual != expected) throw Error(ErrorKind::kChecksum, path, "CRC-32 or size does not match the manifest");
}

void append_double(std::string& out, double v) {
  std::array<char, 32> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

void FieldReader::fail(const std::string& what) const {
  throw Error(ErrorKind::kMalformed, path_, "line " + std::to_string(line_no_) + ": " + what);
}

std::string_view FieldReader::next_raw() {
  if (done_) fail("too few fields");
  const auto comma = rest_.find(separator_);
  std::string_view field = rest_.substr(0, comma);
  if (comma == std::string_view::npos) {
    done_ = true;
    rest_ = {};
  } else {
    rest_.remove_prefix(comma + 1);
  }
  return field;
}

std::uint64_t FieldReader::next_uint() {
  const auto field = next_raw();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    fail("expected an unsigned integer, got '" + std::string(field) + "'");
  }
  return v;
}

double FieldReader::next_double() {
  const auto field = next_raw();
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    fail("expected a number, got '" + std::string(field) + "'");
  }
  return v;
}

std::optional<double> FieldReader::next_optional_double() {
  const auto field = next_raw();
  if (field.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    fail("expected a number or empty field, got '" + std::string(field) + "'");
  }
  return v;
}

void FieldReader::expect_end() {
  if (!done_) fail("too many fields");
}

LineSource::LineSource(const fs::path& path) : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw Error(ErrorKind::kOpen, path, "cannot open for reading");
}

bool LineSource::next(std::string& line) {
  if (!std::getline(in_, line)) return false;
  ++line_no_;
  if (in_.eof()) throw Error(ErrorKind::kTruncated, path_, "last line is not newline-terminated");
  return true;
}

}  // namespace detail

namespace {

json manifest_to_json(const DatasetManifest& m) {
  json files = json::object();
  for (const auto& [name, d] : m.files) {
    char hex[9];
    std::snprintf(hex, sizeof hex, "%08x", d.crc32);
    files[name] = {{"bytes", d.bytes}, {"crc32", hex}};
  }
  json j = {
      {"format_version", m.format_version},
      {"format", std::string(to_string(m.format))},
      {"catalogue_size", m.catalogue_size},
      {"trial_count", m.trial_count},
      {"occurrence_count", m.occurrence_count},
      {"elt_count", m.elt_count},
      {"layer_count", m.layer_count},
      {"precision", m.precision},
      {"files", files},
  };
  j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  return j;
}

DatasetManifest manifest_from_json(const json& j, const fs::path& path) {
  DatasetManifest m;
  try {
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != kFormatVersion) {
      throw Error(ErrorKind::kUnknownVersion, path,
                  "format_version " + std::to_string(m.format_version) + " is not supported (expected " +
                      std::to_string(kFormatVersion) + ")");
    }
    m.format = parse_format(j.at("format").get<std::string>());
    m.catalogue_size = j.at("catalogue_size").get<std::uint32_t>();
    m.trial_count = j.at("trial_count").get<std::uint64_t>();
    m.occurrence_count = j.at("occurrence_count").get<std::uint64_t>();
    m.elt_count = j.at("elt_count").get<std::uint64_t>();
    m.layer_count = j.at("layer_count").get<std::uint64_t>();
    m.precision = j.at("precision").get<std::string>();
    if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [name, f] : j.at("files").items()) {
      FileDigest d;
      d.bytes = f.at("bytes").get<std::uint64_t>();
      d.crc32 = static_cast<std::uint32_t>(std::stoul(f.at("crc32").get<std::string>(), nullptr, 16));
      m.files[name] = d;
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kMalformed, path, e.what());
  }
  return m;
}

}  // namespace

void write_dataset(const fs::path& dir, const Dataset& dataset, Format format, std::optional<std::uint64_t> seed) {
  if (auto report = validate_dataset(dataset); !report.empty()) throw ValidationError(std::move(report));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kOpen, dir, "cannot create directory: " + ec.message());

  DatasetManifest m;
  m.format = format;
  m.catalogue_size = dataset.yet.catalogue_size();
  m.trial_count = dataset.yet.trial_count();
  m.occurrence_count = dataset.yet.occurrence_count();
  m.elt_count = dataset.elts.size();
  m.layer_count = dataset.layers.size();
  m.seed = seed;
  m.files = format == Format::kText ? detail::write_text_dataset(dir, dataset)
                                    : detail::write_binary_dataset(dir, dataset);

  detail::FileSink sink(dir / kManifestName);
  sink.write(manifest_to_json(m).dump(2));
  sink.write("\n");
  sink.finish();
}

DatasetManifest read_manifest(const fs::path& dir) {
  const auto path = dir / kManifestName;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kOpen, path, "cannot open for reading");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kMalformed, path, e.what());
  }
  return manifest_from_json(j, path);
}

Dataset read_dataset(const fs::path& dir) {
  const auto manifest = read_manifest(dir);
  for (const auto& [name, digest] : manifest.files) detail::verify_digest(dir / name, digest);
  return manifest.format == Format::kText ? detail::read_text_dataset(dir, manifest)
                                          : detail::read_binary_dataset(dir, manifest);
}

Format ylt_format_for(const fs::path& path) {
  return path.extension() == ".csv" ? Format::kText : Format::kBinary;
}

void write_ylt(const fs::path& path, const YearLossTable& ylt, Format format) {
  if (format == Format::kText) {
    detail::write_text_ylt(path, ylt);
  } else {
    detail::write_binary_ylt(path, ylt);
  }
}

YearLossTable read_ylt(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kOpen, path, "cannot open for reading");
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  if (in.gcount() == 4 && head == detail::kMagic) return detail::read_binary_ylt(path);
  return detail::read_text_ylt(path);
}

}  // namespace ara::io
