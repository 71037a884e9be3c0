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
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tsc/bitio.hpp"
#include "tsc/core.hpp"

namespace tsc {

/// Output of an entropy/dictionary coder. `bytes` is self-contained: any
/// model header comes first and is counted in `header_bytes`; `body_bits`
/// is the exact number of coded bits after that header.
struct EncodedPayload {
    Bytes bytes;
    std::size_t header_bytes = 0;
    std::uint64_t body_bits = 0;
};

// ---------------------------------------------------------------------------
// Exp-Golomb (order 0)
// ---------------------------------------------------------------------------

// Code length of n: 2*floor(log2(n+1)) + 1 bits.
unsigned expgolomb_length(std::uint32_t n) noexcept;
BitStream expgolomb_encode(std::span<const std::uint32_t> values);
std::vector<std::uint32_t> expgolomb_decode(std::span<const std::uint8_t> bytes, std::size_t count);

// ---------------------------------------------------------------------------
// Block bit packing
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultBlockSize = 128;

// Bits needed for v (0 for v == 0).
unsigned bit_width_of(std::uint32_t v) noexcept;

// Per block: one width byte, then the block's values at that width packed
// MSB-first into ceil(count * width / 8) bytes.
Bytes bitpack_encode(std::span<const std::uint32_t> values, std::size_t block_size = kDefaultBlockSize);
std::vector<std::uint32_t> bitpack_decode(std::span<const std::uint8_t> bytes, std::size_t count,
                                          std::size_t block_size = kDefaultBlockSize);

// ---------------------------------------------------------------------------
// Canonical Huffman
// ---------------------------------------------------------------------------

inline constexpr unsigned kMaxHuffmanLength = 32;
inline constexpr std::size_t kMaxHuffmanSymbols = 0xFFFF;

struct CodeLength {
    std::int32_t symbol;
    std::uint8_t length;

    friend bool operator==(const CodeLength&, const CodeLength&) = default;
};

/// Symbol -> code length, sorted by symbol. Codes are implied: symbols
/// ordered by (length, value) take consecutive canonical codes.
struct CodeTable {
    std::vector<CodeLength> entries;

    // Sum of 2^-len scaled by 2^32.
    std::uint64_t kraft_sum() const noexcept;
    unsigned max_length() const noexcept;
};

// Huffman code lengths for the empirical distribution of `series`,
// limited to kMaxHuffmanLength. A single-symbol alphabet gets length 1.
CodeTable huffman_code_lengths(std::span<const std::int32_t> series);

// Header: u16 symbol count, then (i32 symbol, u8 length) pairs; then the
// MSB-first code stream.
EncodedPayload huffman_encode(std::span<const std::int32_t> series);
Samples huffman_decode(std::span<const std::uint8_t> bytes, std::size_t count);

// ---------------------------------------------------------------------------
// Static JPEG-style code
// ---------------------------------------------------------------------------

// Category k = bit length of |v| in unary (k ones, one zero), then k bits:
// v itself for v > 0, the low k bits of v - 1 for v < 0.
BitStream drh_encode(std::span<const std::int32_t> values);
Samples drh_decode(std::span<const std::uint8_t> bytes, std::size_t count);

// ---------------------------------------------------------------------------
// Order-0 range coder
// ---------------------------------------------------------------------------

inline constexpr unsigned kRangeMassBits = 14;
inline constexpr unsigned kRangeWideMassBits = 16;

struct SymbolFrequency {
    std::int32_t symbol;
    std::uint32_t freq;
};

/// Counts scaled to sum to exactly 2^mass_bits, every present symbol
/// keeping a frequency of at least 1.
std::vector<SymbolFrequency> quantize_frequencies(std::span<const std::int32_t> series, unsigned mass_bits);

// Header: u8 mass bits, u32 symbol count, (i32 symbol, u16 freq) pairs;
// then the carry-less range coded bytes.
EncodedPayload range_encode(std::span<const std::int32_t> series);
Samples range_decode(std::span<const std::uint8_t> bytes, std::size_t count);

// ---------------------------------------------------------------------------
// LZSS
// ---------------------------------------------------------------------------

inline constexpr std::size_t kLzssWindow = 4096;
inline constexpr std::size_t kLzssLookahead = 18;
inline constexpr std::size_t kLzssMinMatch = 3;

// Flag byte per 8 tokens (1 = literal byte, 0 = two-byte pair holding the
// 12-bit distance - 1 and the 4-bit length - 3).
Bytes lzss_encode(std::span<const std::uint8_t> input);
Bytes lzss_decode(std::span<const std::uint8_t> input);

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// One 8-bit id space for every compressor a container can name: in-repo
/// coders below 16, external backends from 16 up.
enum class CoderId : std::uint8_t {
    expgolomb = 1,
    bitpack = 2,
    huffman = 3,
    drh = 4,
    range = 5,
    lzss = 6,
    deflate = 16,
    zstd = 17,
    brotli = 18,
    bzip2 = 19,
    lzma = 20,
    lz4 = 21,
    snappy = 22,
    blosc = 23,
    sprintz = 24,
    pcodec = 25,
};

std::string_view to_string(CoderId id) noexcept;
std::optional<CoderId> coder_from_name(std::string_view name) noexcept;
std::optional<CoderId> coder_from_byte(std::uint8_t b) noexcept;
bool is_internal(CoderId id) noexcept;
std::span<const CoderId> internal_coders() noexcept;
std::span<const CoderId> backend_coders() noexcept;

// Runs an in-repo coder on a transformed stream. `width` (2 or 4) is the
// serialized sample width used by byte-oriented coders.
EncodedPayload encode_internal(CoderId id, std::span<const std::int32_t> values, unsigned width);
Samples decode_internal(CoderId id, std::span<const std::uint8_t> payload, std::size_t count, unsigned width);

} // namespace tsc
