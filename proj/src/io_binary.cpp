// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

// Binary layout, all integers little-endian, floats IEEE-754 binary64:
//
//   header   magic "ARA1" | u32 version | u32 byte order (1 = little) | u32 kind
//            | u32 section count | u32 reserved
//   dataset  section table of {u32 id, u32 reserved, u64 offset, u64 length},
//            then the sections in table order
//   YLT      u64 layers | u64 trials | u32 layer ids[layers]
//            | f64 losses[layers * trials] (row-major) | u32 CRC-32 of all
//            preceding bytes

#include "io_internal.hpp"

namespace ara::io::detail {

namespace {

enum SectionId : std::uint32_t {
  kYetMeta = 1,
  kTrialOffsets = 2,
  kEventIds = 3,
  kTimestamps = 4,
  kEltTerms = 5,
  kEltRecords = 6,
  kLayers = 7,
};

constexpr std::size_t kHeaderBytes = 24;
constexpr std::size_t kSectionEntryBytes = 24;
constexpr std::size_t kEltTermsEntryBytes = 40;
constexpr std::size_t kRecordBytes = 12;

std::string encode_header(std::uint32_t kind, std::uint32_t section_count) {
  std::string h(kMagic.begin(), kMagic.end());
  put_le<std::uint32_t>(h, kFormatVersion);
  put_le<std::uint32_t>(h, kLittleEndianTag);
  put_le<std::uint32_t>(h, kind);
  put_le<std::uint32_t>(h, section_count);
  put_le<std::uint32_t>(h, 0);
  return h;
}

void check_header(const unsigned char* h, std::uint32_t expected_kind, const fs::path& path) {
  if (!std::equal(kMagic.begin(), kMagic.end(), reinterpret_cast<const char*>(h))) {
    throw Error(ErrorKind::kMalformed, path, "bad magic bytes");
  }
  const auto version = get_le<std::uint32_t>(h + 4);
  if (version != kFormatVersion) {
    throw Error(ErrorKind::kUnknownVersion, path, "format_version " + std::to_string(version) + " is not supported");
  }
  if (get_le<std::uint32_t>(h + 8) != kLittleEndianTag) throw Error(ErrorKind::kMalformed, path, "unknown byte order");
  if (get_le<std::uint32_t>(h + 12) != expected_kind) throw Error(ErrorKind::kMalformed, path, "unexpected file kind");
}

class InputFile {
 public:
  explicit InputFile(const fs::path& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw Error(ErrorKind::kOpen, path, "cannot open for reading");
    in_.seekg(0, std::ios::end);
    size_ = static_cast<std::uint64_t>(in_.tellg());
    in_.seekg(0);
  }

  std::uint64_t size() const noexcept { return size_; }

  std::vector<unsigned char> read_at(std::uint64_t offset, std::uint64_t length) {
    if (offset > size_ || length > size_ - offset) {
      throw Error(ErrorKind::kTruncated, path_,
                  "need bytes [" + std::to_string(offset) + ", " + std::to_string(offset + length) + "), file has " +
                      std::to_string(size_));
    }
    std::vector<unsigned char> buf(length);
    in_.seekg(static_cast<std::streamoff>(offset));
    in_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(length));
    if (static_cast<std::uint64_t>(in_.gcount()) != length) throw Error(ErrorKind::kTruncated, path_, "short read");
    return buf;
  }

 private:
  fs::path path_;
  std::ifstream in_;
  std::uint64_t size_ = 0;
};

std::uint64_t elt_record_total(const Dataset& ds) {
  std::uint64_t n = 0;
  for (const auto& e : ds.elts) n += e.records.size();
  return n;
}

std::uint64_t layers_bytes(const Dataset& ds) {
  std::uint64_t n = 8;
  for (const auto& l : ds.layers) n += 4 + 4 + 4 * 8 + 8 + 4 * l.elts.size();
  return n;
}

}  // namespace

std::map<std::string, FileDigest> write_binary_dataset(const fs::path& dir, const Dataset& ds) {
  const auto& yet = ds.yet;
  const std::uint64_t occ = yet.occurrence_count();
  const std::vector<std::pair<SectionId, std::uint64_t>> lengths = {
      {kYetMeta, 24},
      {kTrialOffsets, 8 * (yet.trial_count() + 1)},
      {kEventIds, 4 * occ},
      {kTimestamps, 8 * occ},
      {kEltTerms, 8 + kEltTermsEntryBytes * ds.elts.size()},
      {kEltRecords, kRecordBytes * elt_record_total(ds)},
      {kLayers, layers_bytes(ds)},
  };

  std::string head = encode_header(kKindDataset, static_cast<std::uint32_t>(lengths.size()));
  std::uint64_t offset = kHeaderBytes + kSectionEntryBytes * lengths.size();
  for (const auto& [id, len] : lengths) {
    put_le<std::uint32_t>(head, id);
    put_le<std::uint32_t>(head, 0);
    put_le<std::uint64_t>(head, offset);
    put_le<std::uint64_t>(head, len);
    offset += len;
  }

  FileSink out(dir / kBinaryDatasetName);
  out.write(head);

  std::string buf;
  put_le<std::uint32_t>(buf, yet.catalogue_size());
  put_le<std::uint32_t>(buf, 0);
  put_le<std::uint64_t>(buf, yet.trial_count());
  put_le<std::uint64_t>(buf, occ);
  out.write(buf);

  // Large arrays go out in bounded pieces to keep the staging buffer small.
  constexpr std::size_t kPiece = std::size_t{1} << 20;
  auto stream_array = [&](auto values) {
    for (std::size_t i = 0; i < values.size(); i += kPiece) {
      buf.clear();
      append_le_array(buf, values.subspan(i, std::min(kPiece, values.size() - i)));
      out.write(buf);
    }
  };
  stream_array(yet.trial_offsets());
  {
    static_assert(sizeof(EventId) == sizeof(std::uint32_t));
    const auto ev = yet.events();
    stream_array(std::span<const std::uint32_t>(reinterpret_cast<const std::uint32_t*>(ev.data()), ev.size()));
  }
  stream_array(yet.timestamps());

  buf.clear();
  put_le<std::uint64_t>(buf, ds.elts.size());
  for (const auto& elt : ds.elts) {
    put_le<std::uint64_t>(buf, elt.records.size());
    put_f64(buf, elt.terms.exchange_rate);
    put_f64(buf, elt.terms.retention);
    put_le<std::uint64_t>(buf, elt.terms.limit ? 1 : 0);
    put_f64(buf, elt.terms.limit.value_or(0.0));
  }
  out.write(buf);

  for (const auto& elt : ds.elts) {
    buf.clear();
    for (const auto& rec : elt.records) {
      put_le<std::uint32_t>(buf, rec.event.value);
      put_f64(buf, rec.loss);
    }
    out.write(buf);
  }

  buf.clear();
  put_le<std::uint64_t>(buf, ds.layers.size());
  for (const auto& layer : ds.layers) {
    const auto& t = layer.terms;
    put_le<std::uint32_t>(buf, layer.id);
    put_le<std::uint32_t>(buf, (t.occ_limit ? 1u : 0u) | (t.agg_limit ? 2u : 0u));
    put_f64(buf, t.occ_retention);
    put_f64(buf, t.occ_limit.value_or(0.0));
    put_f64(buf, t.agg_retention);
    put_f64(buf, t.agg_limit.value_or(0.0));
    put_le<std::uint64_t>(buf, layer.elts.size());
    for (auto e : layer.elts) put_le<std::uint32_t>(buf, e);
  }
  out.write(buf);

  if (out.bytes_written() != offset) {
    throw Error(ErrorKind::kMalformed, dir / kBinaryDatasetName, "internal error: section sizes disagree");
  }
  return {{kBinaryDatasetName, out.finish()}};
}

Dataset read_binary_dataset(const fs::path& dir, const DatasetManifest& m) {
  const auto path = dir / kBinaryDatasetName;
  if (!m.files.contains(kBinaryDatasetName)) {
    throw Error(ErrorKind::kMalformed, dir / kManifestName, "missing entry for dataset.bin");
  }
  InputFile in(path);
  const auto header = in.read_at(0, kHeaderBytes);
  check_header(header.data(), kKindDataset, path);
  const auto sections = get_le<std::uint32_t>(header.data() + 16);

  std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> table;
  const auto entries = in.read_at(kHeaderBytes, std::uint64_t{kSectionEntryBytes} * sections);
  for (std::uint32_t s = 0; s < sections; ++s) {
    const unsigned char* e = entries.data() + s * kSectionEntryBytes;
    table[get_le<std::uint32_t>(e)] = {get_le<std::uint64_t>(e + 8), get_le<std::uint64_t>(e + 16)};
  }
  auto section = [&](SectionId id) {
    auto it = table.find(id);
    if (it == table.end()) throw Error(ErrorKind::kMalformed, path, "missing section " + std::to_string(id));
    return in.read_at(it->second.first, it->second.second);
  };
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::kMalformed, path, what);
  };

  const auto meta = section(kYetMeta);
  require(meta.size() == 24, "bad YET metadata section");
  const auto catalogue = get_le<std::uint32_t>(meta.data());
  const auto trials = get_le<std::uint64_t>(meta.data() + 8);
  const auto occ = get_le<std::uint64_t>(meta.data() + 16);
  require(trials == m.trial_count && occ == m.occurrence_count && catalogue == m.catalogue_size,
          "YET shape differs from manifest");

  std::vector<std::uint64_t> offsets(trials + 1);
  {
    const auto raw = section(kTrialOffsets);
    require(raw.size() == 8 * offsets.size(), "bad trial offsets section");
    decode_le_array(raw.data(), offsets.size(), offsets.data());
  }
  std::vector<EventId> events(occ);
  {
    const auto raw = section(kEventIds);
    require(raw.size() == 4 * occ, "bad event id section");
    decode_le_array(raw.data(), occ, reinterpret_cast<std::uint32_t*>(events.data()));
  }
  std::vector<double> timestamps(occ);
  {
    const auto raw = section(kTimestamps);
    require(raw.size() == 8 * occ, "bad timestamp section");
    decode_le_array(raw.data(), occ, timestamps.data());
  }

  Dataset ds;
  try {
    ds.yet = YearEventTable(catalogue, std::move(offsets), std::move(events), std::move(timestamps));
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::kMalformed, path, e.what());
  }

  {
    const auto raw = section(kEltTerms);
    require(raw.size() >= 8, "bad ELT terms section");
    const auto count = get_le<std::uint64_t>(raw.data());
    require(count == m.elt_count && raw.size() == 8 + kEltTermsEntryBytes * count, "bad ELT terms section");
    ds.elts.resize(count);
    const auto records = section(kEltRecords);
    std::uint64_t cursor = 0;
    for (std::uint64_t e = 0; e < count; ++e) {
      const unsigned char* p = raw.data() + 8 + e * kEltTermsEntryBytes;
      auto& elt = ds.elts[e];
      const auto n = get_le<std::uint64_t>(p);
      elt.terms.exchange_rate = std::bit_cast<double>(get_le<std::uint64_t>(p + 8));
      elt.terms.retention = std::bit_cast<double>(get_le<std::uint64_t>(p + 16));
      if (get_le<std::uint64_t>(p + 24)) elt.terms.limit = std::bit_cast<double>(get_le<std::uint64_t>(p + 32));
      require(n <= (records.size() - cursor) / kRecordBytes, "ELT record section too short");
      elt.records.resize(n);
      for (auto& rec : elt.records) {
        const unsigned char* r = records.data() + cursor;
        rec.event = EventId{get_le<std::uint32_t>(r)};
        rec.loss = std::bit_cast<double>(get_le<std::uint64_t>(r + 4));
        cursor += kRecordBytes;
      }
    }
    require(cursor == records.size(), "ELT record section has trailing bytes");
  }

  {
    const auto raw = section(kLayers);
    require(raw.size() >= 8, "bad layer section");
    const auto count = get_le<std::uint64_t>(raw.data());
    require(count == m.layer_count, "layer count differs from manifest");
    std::uint64_t cursor = 8;
    ds.layers.resize(count);
    for (auto& layer : ds.layers) {
      require(raw.size() - cursor >= 48, "layer section too short");
      const unsigned char* p = raw.data() + cursor;
      layer.id = get_le<std::uint32_t>(p);
      const auto flags = get_le<std::uint32_t>(p + 4);
      layer.terms.occ_retention = std::bit_cast<double>(get_le<std::uint64_t>(p + 8));
      if (flags & 1u) layer.terms.occ_limit = std::bit_cast<double>(get_le<std::uint64_t>(p + 16));
      layer.terms.agg_retention = std::bit_cast<double>(get_le<std::uint64_t>(p + 24));
      if (flags & 2u) layer.terms.agg_limit = std::bit_cast<double>(get_le<std::uint64_t>(p + 32));
      const auto n = get_le<std::uint64_t>(p + 40);
      cursor += 48;
      require(n <= (raw.size() - cursor) / 4, "layer section too short");
      layer.elts.resize(n);
      for (auto& e : layer.elts) {
        e = get_le<std::uint32_t>(raw.data() + cursor);
        cursor += 4;
      }
    }
    require(cursor == raw.size(), "layer section has trailing bytes");
  }
  return ds;
}

void write_binary_ylt(const fs::path& path, const YearLossTable& ylt) {
  std::string buf = encode_header(kKindYearLossTable, 0);
  put_le<std::uint64_t>(buf, ylt.layer_count());
  put_le<std::uint64_t>(buf, ylt.trial_count());
  append_le_array(buf, ylt.layer_ids());
  append_le_array(buf, ylt.values());
  put_le<std::uint32_t>(buf, crc32_of(buf));
  FileSink out(path);
  out.write(buf);
  out.finish();
}

YearLossTable read_binary_ylt(const fs::path& path) {
  InputFile in(path);
  const auto header = in.read_at(0, kHeaderBytes + 16);
  check_header(header.data(), kKindYearLossTable, path);
  const auto layers = get_le<std::uint64_t>(header.data() + kHeaderBytes);
  const auto trials = get_le<std::uint64_t>(header.data() + kHeaderBytes + 8);
  if (layers > in.size() / 4 || (layers && trials > in.size() / 8 / layers)) {
    throw Error(ErrorKind::kTruncated, path, "declared shape exceeds file size");
  }
  const std::uint64_t expected = kHeaderBytes + 16 + 4 * layers + 8 * layers * trials + 4;
  if (in.size() < expected) {
    throw Error(ErrorKind::kTruncated, path,
                "expected " + std::to_string(expected) + " bytes, found " + std::to_string(in.size()));
  }
  if (in.size() > expected) throw Error(ErrorKind::kMalformed, path, "trailing bytes after checksum");
  const auto bytes = in.read_at(0, expected);
  const auto stored = get_le<std::uint32_t>(bytes.data() + expected - 4);
  const auto actual = crc32_of(std::string_view(reinterpret_cast<const char*>(bytes.data()), expected - 4));
  if (stored != actual) throw Error(ErrorKind::kChecksum, path, "CRC-32 mismatch");

  std::vector<std::uint32_t> ids(layers);
  decode_le_array(bytes.data() + kHeaderBytes + 16, layers, ids.data());
  YearLossTable ylt(std::move(ids), trials);
  const unsigned char* values = bytes.data() + kHeaderBytes + 16 + 4 * layers;
  for (std::size_t r = 0; r < ylt.layer_count(); ++r) {
    decode_le_array(values + 8 * r * trials, trials, ylt.row(r).data());
  }
  return ylt;
}

}  // namespace ara::io::detail
