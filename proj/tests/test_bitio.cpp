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

#include <gtest/gtest.h>

#include <random>

#include "tsc/bitio.hpp"

using namespace tsc;

TEST(BitIo, MsbFirstLayout)
{
    BitWriter w;
    w.put(0b101, 3);
    w.put(0b1, 1);
    w.put(0xFF, 8);
    const BitStream s = std::move(w).finish();
    EXPECT_EQ(s.bit_length, 12u);
    ASSERT_EQ(s.bytes.size(), 2u);
    EXPECT_EQ(s.bytes[0], 0xBF);
    EXPECT_EQ(s.bytes[1], 0xF0);
}

TEST(BitIo, RandomWidthsRoundTrip)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<std::uint64_t, unsigned>> items;
        BitWriter w;
        for (int i = 0; i < 500; ++i) {
            const unsigned n = static_cast<unsigned>(rng() % 65);
            const std::uint64_t v = n == 64 ? rng() : (n == 0 ? 0 : rng() & ((std::uint64_t{1} << n) - 1));
            items.emplace_back(v, n);
            w.put(v, n);
        }
        const BitStream s = std::move(w).finish();
        BitReader r(s.bytes, s.bit_length);
        for (const auto& [v, n] : items)
            ASSERT_EQ(r.get(n), v);
        EXPECT_EQ(r.remaining(), 0u);
    }
}

TEST(BitIo, ReadPastEndThrows)
{
    const Bytes b = {0xAA};
    BitReader r(b);
    EXPECT_EQ(r.get(7), 0x55u);
    EXPECT_TRUE(r.get_bit() == false);
    EXPECT_THROW(r.get(1), Error);
}

TEST(BitIo, BitLengthLimitsReader)
{
    const Bytes b = {0xFF};
    BitReader r(b, 3);
    EXPECT_EQ(r.get(3), 7u);
    EXPECT_THROW(r.get_bit(), Error);
}

TEST(ByteIo, LittleEndianLayout)
{
    Bytes out;
    ByteWriter w(out);
    w.u16(0x0102);
    w.u32(0x03040506);
    w.i32(-2);
    w.u64(0x0102030405060708ull);
    const Bytes expect = {0x02, 0x01, 0x06, 0x05, 0x04, 0x03, 0xFE, 0xFF, 0xFF, 0xFF,
                          0x08, 0x07, 0x06, 0x05, 0x04, 0x03, 0x02, 0x01};
    EXPECT_EQ(out, expect);

    ByteReader r(out, "test");
    EXPECT_EQ(r.u16(), 0x0102);
    EXPECT_EQ(r.u32(), 0x03040506u);
    EXPECT_EQ(r.i32(), -2);
    EXPECT_EQ(r.u64(), 0x0102030405060708ull);
    EXPECT_EQ(r.remaining(), 0u);
}

TEST(ByteIo, ShortReadNamesContext)
{
    const Bytes b = {1, 2, 3};
    ByteReader r(b, "header");
    try {
        r.u32();
        FAIL() << "expected throw";
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "header: truncated stream");
    }
}
