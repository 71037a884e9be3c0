/*
Copyright 2026 The tscomp Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsc/coders.hpp"
#include "tsc/core.hpp"

namespace tsc {

/// External compressor selection. Levels default to the settings the
/// benchmark uses (deflate 9, zstd 19, brotli 10, bzip2 9, lzma 6,
/// blosc 9, pcodec 12).
struct BackendDescriptor {
    CoderId id = CoderId::zstd;
    std::optional<int> level;
    std::map<std::string, std::string> options;  // e.g. blosc "shuffle", "typesize"
};

std::optional<int> default_level(CoderId id) noexcept;
int effective_level(const BackendDescriptor& d);

bool backend_available(CoderId id);
// "available" or the reason it is not.
std::string backend_status(CoderId id);

/// Compresses with the backend's standard framing (zlib stream, zstd frame,
/// raw brotli stream, bzip2 stream, xz container, raw LZ4 block, raw snappy,
/// blosc chunk). Throws UsageError for ids that are not backends and
/// BackendUnavailable when the library cannot be loaded.
Bytes backend_compress(std::span<const std::uint8_t> data, const BackendDescriptor& d);

// `expected_size` is the exact decompressed length; a mismatch is an error.
Bytes backend_decompress(std::span<const std::uint8_t> data, const BackendDescriptor& d, std::size_t expected_size);

// ---------------------------------------------------------------------------
// Sample serialization
// ---------------------------------------------------------------------------

// 2 if every sample fits int16, else 4.
unsigned natural_width(std::span<const std::int32_t> series) noexcept;

// Fixed-width little-endian two's complement samples; width is 2 or 4.
Bytes serialize_series(std::span<const std::int32_t> series, unsigned width);
Samples deserialize_series(std::span<const std::uint8_t> bytes, unsigned width);

} // namespace tsc
