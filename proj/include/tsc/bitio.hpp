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
#include <span>
#include <string_view>

#include "tsc/core.hpp"

namespace tsc {

/// A bit sequence packed most-significant-bit first. Bits past
/// `bit_length` in the last byte are zero.
struct BitStream {
    Bytes bytes;
    std::uint64_t bit_length = 0;
};

class BitWriter {
public:
    // Appends the low `nbits` bits of `value`, most significant first.
    void put(std::uint64_t value, unsigned nbits);
    void put_bit(bool bit) { put(bit ? 1u : 0u, 1); }

    std::uint64_t bit_length() const noexcept { return bits_; }
    BitStream finish() &&;

private:
    Bytes bytes_;
    std::uint64_t acc_ = 0;
    unsigned pending_ = 0;
    std::uint64_t bits_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> data) noexcept
        : BitReader(data, static_cast<std::uint64_t>(data.size()) * 8)
    {
    }
    BitReader(std::span<const std::uint8_t> data, std::uint64_t bit_length) noexcept
        : data_(data), limit_(bit_length)
    {
    }

    // Throws Error("truncated stream") when fewer than `nbits` remain.
    std::uint64_t get(unsigned nbits);
    bool get_bit();

    std::uint64_t position() const noexcept { return pos_; }
    std::uint64_t remaining() const noexcept { return limit_ - pos_; }

private:
    std::span<const std::uint8_t> data_;
    std::uint64_t limit_;
    std::uint64_t pos_ = 0;
};

// Little-endian byte-level header writer.
class ByteWriter {
public:
    explicit ByteWriter(Bytes& out) noexcept : out_(out) {}

    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) { le(v, 2); }
    void u32(std::uint32_t v) { le(v, 4); }
    void u64(std::uint64_t v) { le(v, 8); }
    void i32(std::int32_t v) { le(static_cast<std::uint32_t>(v), 4); }
    void raw(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }

private:
    void le(std::uint64_t v, int n)
    {
        for (int i = 0; i < n; ++i)
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    Bytes& out_;
};

// Little-endian reader; every short read throws Error with `context`.
class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> data, std::string_view context) noexcept
        : data_(data), context_(context)
    {
    }

    std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
    std::uint64_t u64() { return le(8); }
    std::int32_t i32() { return static_cast<std::int32_t>(static_cast<std::uint32_t>(le(4))); }
    std::span<const std::uint8_t> take(std::uint64_t n);

    std::size_t offset() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return data_.size() - pos_; }
    std::span<const std::uint8_t> rest() const noexcept { return data_.subspan(pos_); }

private:
    std::uint64_t le(int n);

    std::span<const std::uint8_t> data_;
    std::string_view context_;
    std::size_t pos_ = 0;
};

} // namespace tsc
