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

#include <algorithm>
#include <bit>
#include <string>

#include "tsc/coders.hpp"

namespace tsc {

unsigned expgolomb_length(std::uint32_t n) noexcept
{
    const std::uint64_t m = std::uint64_t{n} + 1;
    return 2 * (std::bit_width(m) - 1) + 1;
}

BitStream expgolomb_encode(std::span<const std::uint32_t> values)
{
    BitWriter w;
    for (const std::uint32_t n : values) {
        const std::uint64_t m = std::uint64_t{n} + 1;
        const unsigned len = static_cast<unsigned>(std::bit_width(m));
        w.put(0, len - 1);
        w.put(m, len);
    }
    return std::move(w).finish();
}

std::vector<std::uint32_t> expgolomb_decode(std::span<const std::uint8_t> bytes, std::size_t count)
{
    BitReader r(bytes);
    std::vector<std::uint32_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        unsigned zeros = 0;
        while (!r.get_bit()) {
            if (++zeros > 32)
                throw Error("expgolomb: codeword exceeds 32-bit range");
        }
        const std::uint64_t m = (std::uint64_t{1} << zeros) | r.get(zeros);
        if (m - 1 > 0xFFFFFFFFull)
            throw Error("expgolomb: codeword exceeds 32-bit range");
        out.push_back(static_cast<std::uint32_t>(m - 1));
    }
    return out;
}

unsigned bit_width_of(std::uint32_t v) noexcept
{
    return static_cast<unsigned>(std::bit_width(v));
}

Bytes bitpack_encode(std::span<const std::uint32_t> values, std::size_t block_size)
{
    if (block_size == 0)
        throw UsageError("bitpack: block size must be positive");
    Bytes out;
    for (std::size_t start = 0; start < values.size(); start += block_size) {
        const auto block = values.subspan(start, std::min(block_size, values.size() - start));
        std::uint32_t acc = 0;
        for (const std::uint32_t v : block)
            acc |= v;
        const unsigned width = bit_width_of(acc);
        out.push_back(static_cast<std::uint8_t>(width));
        if (width == 0)
            continue;
        BitWriter w;
        for (const std::uint32_t v : block)
            w.put(v, width);
        const auto packed = std::move(w).finish();
        out.insert(out.end(), packed.bytes.begin(), packed.bytes.end());
    }
    return out;
}

std::vector<std::uint32_t> bitpack_decode(std::span<const std::uint8_t> bytes, std::size_t count,
                                          std::size_t block_size)
{
    if (block_size == 0)
        throw UsageError("bitpack: block size must be positive");
    std::vector<std::uint32_t> out;
    out.reserve(count);
    ByteReader r(bytes, "bitpack");
    while (out.size() < count) {
        const std::size_t n = std::min(block_size, count - out.size());
        const unsigned width = r.u8();
        if (width > 32)
            throw Error("corrupt block header: width " + std::to_string(width));
        if (width == 0) {
            out.insert(out.end(), n, 0);
            continue;
        }
        const auto packed = r.take((static_cast<std::uint64_t>(n) * width + 7) / 8);
        BitReader br(packed);
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(static_cast<std::uint32_t>(br.get(width)));
    }
    return out;
}

} // namespace tsc
