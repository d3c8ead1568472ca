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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace pls {

// CRC-32 (zlib polynomial) over a byte range, optionally continuing `seed`.
std::uint32_t crc32(std::span<const std::uint8_t> bytes, std::uint32_t seed = 0);
std::uint32_t crc32(std::string_view text);
std::uint32_t file_crc32(const std::filesystem::path& path);

// SHA-256 of a file's bytes as lowercase hex. Used for run manifests: a
// CRC-32 over a file that already ends in its own CRC-32 trailer is the same
// constant for every file, so it cannot identify artifacts.
std::string file_sha256(const std::filesystem::path& path);

// Lowercase fixed-width hex, e.g. "0a1b2c3d".
std::string hex32(std::uint32_t value);

}  // namespace pls
