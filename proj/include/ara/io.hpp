// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "ara/model.hpp"

namespace ara::io {

enum class Format { kText, kBinary };

std::string_view to_string(Format f) noexcept;
/// "text" or "binary"; throws std::invalid_argument otherwise.
Format parse_format(std::string_view name);

enum class ErrorKind { kOpen, kTruncated, kChecksum, kUnknownVersion, kMalformed };

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::filesystem::path& path, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  ErrorKind kind_;
  std::filesystem::path path_;
};

inline constexpr int kFormatVersion = 1;
inline constexpr char kManifestName[] = "manifest.json";

struct FileDigest {
  std::uint64_t bytes = 0;
  std::uint32_t crc32 = 0;

  friend bool operator==(const FileDigest&, const FileDigest&) = default;
};

/// Contents of manifest.json in a dataset directory.
struct DatasetManifest {
  int format_version = kFormatVersion;
  Format format = Format::kText;
  std::uint32_t catalogue_size = 0;
  std::uint64_t trial_count = 0;
  std::uint64_t occurrence_count = 0;
  std::uint64_t elt_count = 0;
  std::uint64_t layer_count = 0;
  std::string precision = "double";
  std::optional<std::uint64_t> seed;
  std::map<std::string, FileDigest> files;
};

/// Writes the dataset files plus manifest.json into `dir` (created if
/// missing). Rejects invalid datasets with ValidationError.
void write_dataset(const std::filesystem::path& dir, const Dataset& dataset, Format format,
                   std::optional<std::uint64_t> seed = std::nullopt);

DatasetManifest read_manifest(const std::filesystem::path& dir);

/// Loads a dataset written by write_dataset. Every listed file is checked for
/// truncation (kTruncated) and then against its CRC-32 (kChecksum) before it
/// is parsed.
Dataset read_dataset(const std::filesystem::path& dir);

/// Binary unless the path ends in ".csv".
Format ylt_format_for(const std::filesystem::path& path);

void write_ylt(const std::filesystem::path& path, const YearLossTable& ylt, Format format);
inline void write_ylt(const std::filesystem::path& path, const YearLossTable& ylt) {
  write_ylt(path, ylt, ylt_format_for(path));
}

/// Detects the format from the file's leading bytes.
YearLossTable read_ylt(const std::filesystem::path& path);

}  // namespace ara::io
