// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "ara/io.hpp"

namespace ara::io::detail {

namespace fs = std::filesystem;

/// Buffered output file that tracks byte count and CRC-32 of everything
/// written.
class FileSink {
 public:
  explicit FileSink(const fs::path& path);
  ~FileSink();
  FileSink(const FileSink&) = delete;
  FileSink& operator=(const FileSink&) = delete;

  void write(std::string_view bytes);
  void write(const void* data, std::size_t size) { write(std::string_view(static_cast<const char*>(data), size)); }
  /// Flushes and closes; throws Error(kOpen) on I/O failure.
  FileDigest finish();
  std::uint64_t bytes_written() const noexcept { return bytes_ + buffer_.size(); }

 private:
  void flush_buffer();

  fs::path path_;
  std::ofstream out_;
  std::string buffer_;
  std::uint64_t bytes_ = 0;
  std::uint32_t crc_ = 0;
  bool finished_ = false;
};

/// Streams the whole file once; throws Error(kOpen) when it cannot be read.
FileDigest digest_file(const fs::path& path);

/// Size and CRC check against a recorded digest: a shorter file is reported as
/// truncated, anything else that differs as a checksum mismatch.
void verify_digest(const fs::path& path, const FileDigest& expected);

std::uint32_t crc32_of(std::string_view bytes, std::uint32_t crc = 0);

// Little-endian encoding helpers.

template <typename T>
void put_le(std::string& out, T value) {
  static_assert(std::is_integral_v<T>);
  using U = std::make_unsigned_t<T>;
  auto u = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xFF));
}

inline void put_f64(std::string& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

template <typename T>
T get_le(const unsigned char* p) {
  using U = std::make_unsigned_t<T>;
  U u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(static_cast<U>(p[i]) << (8 * i));
  return static_cast<T>(u);
}

/// Appends the little-endian image of a span of 4- or 8-byte scalars.
template <typename T>
void append_le_array(std::string& out, std::span<const T> values) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  if constexpr (std::endian::native == std::endian::little) {
    const auto offset = out.size();
    out.resize(offset + values.size_bytes());
    if (!values.empty()) std::memcpy(out.data() + offset, values.data(), values.size_bytes());
  } else {
    for (const T& v : values) put_le(out, std::bit_cast<U>(v));
  }
}

/// Decodes `count` little-endian scalars from raw bytes.
template <typename T>
void decode_le_array(const unsigned char* src, std::size_t count, T* dst) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  if constexpr (std::endian::native == std::endian::little) {
    if (count) std::memcpy(dst, src, count * sizeof(T));
  } else {
    for (std::size_t i = 0; i < count; ++i) dst[i] = std::bit_cast<T>(get_le<U>(src + i * sizeof(T)));
  }
}

/// Shortest decimal that reads back to the same double.
void append_double(std::string& out, double v);

template <typename T>
void append_int(std::string& out, T v) {
  std::array<char, 24> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

/// Comma-separated field cursor over one line of a text file.
class FieldReader {
 public:
  FieldReader(std::string_view line, const fs::path& path, std::uint64_t line_no, char separator = ',')
      : rest_(line), separator_(separator), path_(path), line_no_(line_no) {}

  std::string_view next_raw();
  std::uint64_t next_uint();
  double next_double();
  std::optional<double> next_optional_double();
  void expect_end();
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::string_view rest_;
  char separator_;
  bool done_ = false;
  const fs::path& path_;
  std::uint64_t line_no_;
};

/// Line-by-line reader that reports the file path and line number in errors.
class LineSource {
 public:
  explicit LineSource(const fs::path& path);
  bool next(std::string& line);
  std::uint64_t line_no() const noexcept { return line_no_; }
  const fs::path& path() const noexcept { return path_; }

 private:
  fs::path path_;
  std::ifstream in_;
  std::uint64_t line_no_ = 0;
};

// Text dataset (several CSV files).
std::map<std::string, FileDigest> write_text_dataset(const fs::path& dir, const Dataset& dataset);
Dataset read_text_dataset(const fs::path& dir, const DatasetManifest& manifest);

// Binary dataset (single sectioned file).
inline constexpr char kBinaryDatasetName[] = "dataset.bin";
std::map<std::string, FileDigest> write_binary_dataset(const fs::path& dir, const Dataset& dataset);
Dataset read_binary_dataset(const fs::path& dir, const DatasetManifest& manifest);

void write_text_ylt(const fs::path& path, const YearLossTable& ylt);
YearLossTable read_text_ylt(const fs::path& path);
void write_binary_ylt(const fs::path& path, const YearLossTable& ylt);
YearLossTable read_binary_ylt(const fs::path& path);

inline constexpr std::array<char, 4> kMagic{'A', 'R', 'A', '1'};
inline constexpr std::uint32_t kLittleEndianTag = 1;
inline constexpr std::uint32_t kKindDataset = 1;
inline constexpr std::uint32_t kKindYearLossTable = 2;

}  // namespace ara::io::detail
