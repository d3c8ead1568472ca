// Copyright 2026 The plsbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "binio.hpp"
#include "pls/checksum.hpp"
#include "pls/dataset.hpp"
#include "pls/error.hpp"

namespace pls {

namespace {

constexpr std::uint16_t kDatasetVersion = 1;
// magic, version, flags, n_samples, 4 x u16 dims, manifest length
constexpr std::size_t kHeaderBytes = 4 + 2 + 2 + 4 + 4 * 2 + 4;
constexpr std::size_t kRecordBytes = 4 + 1 + 3 + 4 * kSideFeatures + 4 * kImageValues;

Normalization parse_normalization(const nlohmann::json& doc) {
  try {
    const auto& n = doc.at("normalization");
    return {n.at("width_m").get<double>(), n.at("depth_m").get<double>(), n.at("power_min_dbm").get<double>(),
            n.at("power_max_dbm").get<double>()};
  } catch (const nlohmann::json::exception&) {
    throw FormatError("manifest.normalization", "missing or malformed");
  }
}

}  // namespace

std::vector<std::uint8_t> serialize_dataset(const Dataset& ds) {
  const std::string manifest = ds.manifest.document.dump();
  binio::Writer w;
  w.buffer().reserve(kHeaderBytes + manifest.size() + ds.samples.size() * kRecordBytes + 4);
  w.bytes("PLSD");
  w.u16(kDatasetVersion);
  w.u16(0);
  w.u32(static_cast<std::uint32_t>(ds.samples.size()));
  w.u16(kImageSize);
  w.u16(kImageSize);
  w.u16(kImagePlanes);
  w.u16(kSideFeatures);
  w.u32(static_cast<std::uint32_t>(manifest.size()));
  w.bytes(manifest);
  for (const auto& s : ds.samples) {
    if (s.image.values.size() != kImageValues) throw InvariantError("serialize_dataset: image size");
    w.u32(static_cast<std::uint32_t>(s.ue_id));
    w.u8(s.label);
    w.u8(0);
    w.u8(0);
    w.u8(0);
    for (float v : s.side) w.f32(v);
    for (float v : s.image.values) w.f32(v);
  }
  w.u32(crc32(w.buffer()));
  return std::move(w.buffer());
}

Dataset parse_dataset(std::span<const std::uint8_t> bytes) {
  binio::Reader r(bytes);
  if (r.bytes(4, "magic") != "PLSD") throw FormatError("magic", "expected \"PLSD\"");
  const auto version = r.u16("version");
  if (version != kDatasetVersion)
    throw FormatError("version", "unsupported version " + std::to_string(version));
  r.u16("flags");
  const std::uint32_t n = r.u32("n_samples");
  const auto height = r.u16("dims.height"), width = r.u16("dims.width");
  const auto planes = r.u16("dims.planes"), side = r.u16("dims.side");
  if (height != kImageSize || width != kImageSize || planes != kImagePlanes)
    throw FormatError("dims", "expected 64x64x3 images");
  if (side != kSideFeatures) throw FormatError("dims.side", "expected 3 side features");
  const std::uint32_t manifest_len = r.u32("manifest_length");

  const std::uint64_t expected = kHeaderBytes + std::uint64_t{manifest_len} + std::uint64_t{n} * kRecordBytes + 4;
  if (bytes.size() < expected) throw FormatError("records", "file truncated");
  if (bytes.size() > expected) throw FormatError("records", "trailing bytes after checksum");
  const std::uint32_t stored = static_cast<std::uint32_t>(bytes[expected - 4]) |
                               static_cast<std::uint32_t>(bytes[expected - 3]) << 8 |
                               static_cast<std::uint32_t>(bytes[expected - 2]) << 16 |
                               static_cast<std::uint32_t>(bytes[expected - 1]) << 24;
  if (crc32(bytes.first(expected - 4)) != stored)
    throw IntegrityError("checksum", "CRC-32 mismatch; file is corrupted or was modified");

  Dataset ds;
  const std::string manifest = r.bytes(manifest_len, "manifest");
  try {
    ds.manifest.document = nlohmann::json::parse(manifest);
  } catch (const nlohmann::json::parse_error&) {
    throw FormatError("manifest", "invalid JSON");
  }
  const auto& doc = ds.manifest.document;
  try {
    ds.manifest.scenario_hash = doc.at("scenario_hash").get<std::string>();
    ds.manifest.radio_hash = doc.at("radio_hash").get<std::string>();
    ds.manifest.master_seed = doc.at("master_seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError("manifest", "missing scenario_hash, radio_hash or master_seed");
  }
  ds.manifest.normalization = parse_normalization(doc);

  ds.samples.resize(n);
  for (auto& s : ds.samples) {
    s.ue_id = static_cast<int>(r.u32("record.ue_id"));
    s.label = r.u8("record.label");
    if (s.label > 1) throw FormatError("record.label", "must be 0 or 1");
    r.u8("record.pad");
    r.u8("record.pad");
    r.u8("record.pad");
    for (auto& v : s.side) v = r.f32("record.side");
    for (auto& v : s.image.values) v = r.f32("record.image");
  }
  return ds;
}

void write_dataset(const Dataset& ds, const std::filesystem::path& path) {
  binio::write_file(path, serialize_dataset(ds));
}

Dataset read_dataset(const std::filesystem::path& path) { return parse_dataset(binio::read_file(path)); }

}  // namespace pls
