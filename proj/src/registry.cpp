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

#include <array>
#include <string>

#include "tsc/backends.hpp"
#include "tsc/coders.hpp"
#include "tsc/transforms.hpp"

namespace tsc {

namespace {

struct Entry {
    CoderId id;
    std::string_view name;
};

constexpr std::array kEntries{
    Entry{CoderId::expgolomb, "expgolomb"}, Entry{CoderId::bitpack, "bitpack"}, Entry{CoderId::huffman, "huffman"},
    Entry{CoderId::drh, "drh"},             Entry{CoderId::range, "range"},     Entry{CoderId::lzss, "lzss"},
    Entry{CoderId::deflate, "deflate"},     Entry{CoderId::zstd, "zstd"},       Entry{CoderId::brotli, "brotli"},
    Entry{CoderId::bzip2, "bzip2"},         Entry{CoderId::lzma, "lzma"},       Entry{CoderId::lz4, "lz4"},
    Entry{CoderId::snappy, "snappy"},       Entry{CoderId::blosc, "blosc"},     Entry{CoderId::sprintz, "sprintz"},
    Entry{CoderId::pcodec, "pcodec"},
};

constexpr std::array kInternal{CoderId::expgolomb, CoderId::bitpack, CoderId::huffman,
                               CoderId::drh,       CoderId::range,   CoderId::lzss};

constexpr std::array kBackends{CoderId::deflate, CoderId::zstd,   CoderId::brotli, CoderId::bzip2,
                               CoderId::lzma,    CoderId::lz4,    CoderId::snappy, CoderId::blosc,
                               CoderId::sprintz, CoderId::pcodec};

} // namespace

std::string_view to_string(CoderId id) noexcept
{
    for (const auto& e : kEntries)
        if (e.id == id)
            return e.name;
    return "unknown";
}

std::optional<CoderId> coder_from_name(std::string_view name) noexcept
{
    if (name == "zlib")
        return CoderId::deflate;
    if (name == "golomb")
        return CoderId::expgolomb;
    for (const auto& e : kEntries)
        if (e.name == name)
            return e.id;
    return std::nullopt;
}

std::optional<CoderId> coder_from_byte(std::uint8_t b) noexcept
{
    for (const auto& e : kEntries)
        if (static_cast<std::uint8_t>(e.id) == b)
            return e.id;
    return std::nullopt;
}

bool is_internal(CoderId id) noexcept
{
    return static_cast<std::uint8_t>(id) < 16;
}

std::span<const CoderId> internal_coders() noexcept
{
    return kInternal;
}

std::span<const CoderId> backend_coders() noexcept
{
    return kBackends;
}

EncodedPayload encode_internal(CoderId id, std::span<const std::int32_t> values, unsigned width)
{
    EncodedPayload out;
    switch (id) {
    case CoderId::expgolomb: {
        auto bits = expgolomb_encode(zigzag(values));
        out.body_bits = bits.bit_length;
        out.bytes = std::move(bits.bytes);
        return out;
    }
    case CoderId::bitpack: {
        out.bytes = bitpack_encode(zigzag(values));
        // one width byte per block
        out.header_bytes = (values.size() + kDefaultBlockSize - 1) / kDefaultBlockSize;
        out.body_bits = (out.bytes.size() - out.header_bytes) * 8;
        return out;
    }
    case CoderId::huffman:
        return huffman_encode(values);
    case CoderId::drh: {
        auto bits = drh_encode(values);
        out.body_bits = bits.bit_length;
        out.bytes = std::move(bits.bytes);
        return out;
    }
    case CoderId::range:
        return range_encode(values);
    case CoderId::lzss:
        out.bytes = lzss_encode(serialize_series(values, width));
        out.body_bits = out.bytes.size() * 8;
        return out;
    default:
        throw UsageError(std::string(to_string(id)) + " is not an in-repo coder");
    }
}

Samples decode_internal(CoderId id, std::span<const std::uint8_t> payload, std::size_t count, unsigned width)
{
    switch (id) {
    case CoderId::expgolomb:
        return unzigzag(expgolomb_decode(payload, count));
    case CoderId::bitpack:
        return unzigzag(bitpack_decode(payload, count));
    case CoderId::huffman:
        return huffman_decode(payload, count);
    case CoderId::drh:
        return drh_decode(payload, count);
    case CoderId::range:
        return range_decode(payload, count);
    case CoderId::lzss: {
        const Bytes raw = lzss_decode(payload);
        if (raw.size() != count * width)
            throw Error("lzss: truncated stream (" + std::to_string(raw.size()) + " of " +
                        std::to_string(count * width) + " bytes)");
        return deserialize_series(raw, width);
    }
    default:
        throw UsageError(std::string(to_string(id)) + " is not an in-repo coder");
    }
}

} // namespace tsc
