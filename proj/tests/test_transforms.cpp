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

#include <algorithm>
#include <climits>
#include <map>
#include <random>

#include "tsc/synth.hpp"
#include "tsc/transforms.hpp"

using namespace tsc;

namespace {

// Random series with a mix of shapes: flat runs, small steps, wide jumps.
Samples random_series(std::mt19937_64& rng, std::size_t n)
{
    Samples s;
    s.reserve(n);
    std::int32_t v = static_cast<std::int32_t>(rng() % 2001) - 1000;
    while (s.size() < n) {
        switch (rng() % 4) {
        case 0: {
            const std::size_t run = 1 + rng() % 20;
            for (std::size_t i = 0; i < run && s.size() < n; ++i)
                s.push_back(v);
            break;
        }
        case 1:
            v += static_cast<std::int32_t>(rng() % 7) - 3;
            s.push_back(v);
            break;
        case 2:
            v = static_cast<std::int32_t>(rng() % 65536) - 32768;
            s.push_back(v);
            break;
        default:
            s.push_back(0);
            break;
        }
    }
    return s;
}

std::vector<TimeSeries> synthetic_cases()
{
    std::vector<TimeSeries> out;
    for (const auto c : kAllSynthCases) {
        SynthSpec spec;
        spec.which = c;
        out.push_back(generate(spec));
    }
    return out;
}

} // namespace

TEST(Delta, Example)
{
    const Samples s = {5, 7, 6, 6};
    EXPECT_EQ(delta_encode(s), (Samples{5, 2, -1, 0}));
    EXPECT_EQ(delta_decode(Samples{5, 2, -1, 0}), s);
}

TEST(Delta, RoundTripProperty)
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const Samples s = random_series(rng, 1 + rng() % 3000);
        ASSERT_EQ(delta_decode(delta_encode(s)), s);
    }
}

TEST(Delta, Errors)
{
    EXPECT_THROW(delta_encode(Samples{}), Error);
    EXPECT_THROW(delta_encode(Samples{INT_MIN, INT_MAX}), Error);
    EXPECT_THROW(delta_decode(Samples{INT_MAX, 1}), Error);
}

TEST(Rle0, Example)
{
    const Samples s = {1, 0, 0, 0, 2, 0};
    const Samples t = rle0_encode(s);
    EXPECT_EQ(t, (Samples{1, 0, 3, 2, 0, 1}));
    EXPECT_EQ(rle0_decode(t), s);
}

TEST(Rle0, RoundTripAndSizeBounds)
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const Samples s = random_series(rng, 1 + rng() % 3000);
        const Samples t = rle0_encode(s);
        ASSERT_EQ(rle0_decode(t), s);

        // a run of k zeros costs 2 tokens: at most one extra token per run
        std::size_t runs = 0;
        std::size_t saved = 0;
        bool all_long = true;
        for (std::size_t i = 0; i < s.size();) {
            if (s[i] != 0) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < s.size() && s[j] == 0)
                ++j;
            ++runs;
            saved += j - i;
            all_long &= j - i >= 3;
            i = j;
        }
        EXPECT_EQ(t.size(), s.size() - saved + 2 * runs);
        EXPECT_LE(t.size(), s.size() + runs);
        if (runs > 0 && all_long)
            EXPECT_LT(t.size(), s.size());
    }
}

TEST(Rle0, LongRunShrinks)
{
    EXPECT_EQ(rle0_encode(Samples{4, 0, 0, 0, 4}).size(), 4u);
    EXPECT_EQ(rle0_encode(Samples(1000, 0)), (Samples{0, 1000}));
}

TEST(Rle0, MalformedTokens)
{
    EXPECT_THROW(rle0_decode(Samples{1, 0}), Error);
    EXPECT_THROW(rle0_decode(Samples{0, 0}), Error);
    EXPECT_THROW(rle0_decode(Samples{0, -3}), Error);
}

TEST(Zigzag, Mapping)
{
    EXPECT_EQ(zigzag(0), 0u);
    EXPECT_EQ(zigzag(-1), 1u);
    EXPECT_EQ(zigzag(1), 2u);
    EXPECT_EQ(zigzag(-2), 3u);
    EXPECT_EQ(zigzag(INT_MAX), 0xFFFFFFFEu);
    EXPECT_EQ(zigzag(INT_MIN), 0xFFFFFFFFu);
    for (std::int64_t v = -70000; v <= 70000; ++v) {
        const auto x = static_cast<std::int32_t>(v);
        const std::uint32_t oracle = v >= 0 ? static_cast<std::uint32_t>(2 * v) : static_cast<std::uint32_t>(-2 * v - 1);
        ASSERT_EQ(zigzag(x), oracle);
        ASSERT_EQ(unzigzag(oracle), x);
    }
}

TEST(Quars, MostFrequentValueMapsToZero)
{
    const Samples s = {7, 7, 7, 7, -3, -3, 100};
    const QuarsResult q = quars_encode(s);
    EXPECT_EQ(q.values[0], 0);
    EXPECT_EQ(quars_decode(q.values, q.map), s);
    // second rank goes positive, third negative
    EXPECT_EQ(q.values[4], 1);
    EXPECT_EQ(q.values[6], -1);
}

TEST(Quars, RoundTripAndCardinalityProperty)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const Samples s = random_series(rng, 1 + rng() % 4000);
        const std::uint16_t bins = trial % 3 == 0 ? 8 : kDefaultQuarsBins;
        const QuarsResult q = quars_encode(s, bins);
        ASSERT_EQ(quars_decode(q.values, q.map), s);
        EXPECT_EQ(cardinality(q.values), cardinality(s));
        EXPECT_LE(q.map.bin_count(), bins);
    }
}

// With one bin per distinct value, sorting values by frequency onto the
// sequence 0, 1, -1, 2, -2, ... minimises the sum of |mapped value|.
TEST(Quars, PerValueBinsNeverIncreaseAad)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t card = 1 + rng() % 200;
        Samples alphabet(card);
        for (auto& a : alphabet)
            a = static_cast<std::int32_t>(rng() % 20001) - 10000;
        Samples s(1 + rng() % 3000);
        for (auto& v : s)
            v = alphabet[std::min(rng() % card, rng() % card)];
        const QuarsResult q = quars_encode(s);
        ASSERT_LE(cardinality(s), kDefaultQuarsBins);
        EXPECT_LE(aad(q.values), aad(s) + 1e-9);

        // oracle: frequencies sorted descending times |slot| of 0, 1, -1, 2, ...
        std::map<std::int32_t, std::size_t> counts;
        for (const auto v : s)
            ++counts[v];
        std::vector<std::size_t> f;
        for (const auto& [v, c] : counts)
            f.push_back(c);
        std::sort(f.rbegin(), f.rend());
        double total = 0;
        for (std::size_t r = 0; r < f.size(); ++r)
            total += static_cast<double>(f[r]) * static_cast<double>((r + 1) / 2);
        EXPECT_NEAR(aad(q.values), total / static_cast<double>(s.size()), 1e-9);
    }
}

TEST(Quars, ModeDominatedDataWithManyValues)
{
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        Samples s(20000);
        for (auto& v : s) {
            const bool spike = rng() % 4 == 0;
            v = spike ? static_cast<std::int32_t>(rng() % 4001) - 2000 : 1500 + static_cast<std::int32_t>(rng() % 3);
        }
        const QuarsResult q = quars_encode(s);
        ASSERT_GT(cardinality(s), kDefaultQuarsBins);
        EXPECT_EQ(quars_decode(q.values, q.map), s);
        EXPECT_LT(aad(q.values), aad(s));
    }
}

TEST(Quars, SwitchingAadDropsAfterDeltaRle)
{
    SynthSpec spec;
    spec.which = SynthCase::switching;
    const Samples dr = rle0_encode(delta_encode(generate(spec).samples));
    const QuarsResult q = quars_encode(dr);
    EXPECT_EQ(cardinality(q.values), cardinality(dr));
    EXPECT_LE(aad(q.values) * 10.0, aad(dr));
}

TEST(Quars, MapSerialization)
{
    QuarsMap m;
    m.bins = {{-5, 2}, {0, 0}, {10, -3}};
    const Bytes b = m.serialize();
    ASSERT_EQ(b.size(), 2u + 3 * 8);
    EXPECT_EQ(b[0], 3);
    EXPECT_EQ(b[1], 0);
    std::size_t used = 0;
    EXPECT_EQ(QuarsMap::deserialize(b, &used), m);
    EXPECT_EQ(used, b.size());

    QuarsMap bad;
    bad.bins = {{4, 0}, {4, 1}};
    EXPECT_THROW(QuarsMap::deserialize(bad.serialize()), Error);
    EXPECT_THROW(QuarsMap::deserialize(Bytes{5, 0, 1}), Error);
}

TEST(Quars, ValueOutsideMapIsRejected)
{
    const Samples s = {1, 1, 2};
    const QuarsResult q = quars_encode(s);
    // per-value bins cover [1, 2) and [2, ...); 1's bin has width 1
    EXPECT_THROW(quars_decode(Samples{-5}, q.map), Error);
}

TEST(Chain, ParseAndLabels)
{
    EXPECT_EQ(TransformChain::parse("none").label(), "none");
    EXPECT_EQ(TransformChain::parse("").label(), "none");
    EXPECT_EQ(TransformChain::parse("d").label(), "D");
    EXPECT_EQ(TransformChain::parse("d+r").label(), "D+R");
    EXPECT_EQ(TransformChain::parse("delta,rle0,quars").label(), "D+R+Q");
    EXPECT_EQ(TransformChain::parse("D+R+Q").spec(), "delta,rle0,quars");
    EXPECT_EQ(TransformChain::parse("q").label(), "Q");
    EXPECT_THROW(TransformChain::parse("delta,bogus"), UsageError);
}

TEST(Chain, OrderIsEnforced)
{
    try {
        TransformChain::parse("quars,delta");
        FAIL() << "expected throw";
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("invalid chain order"), std::string::npos);
    }
    EXPECT_THROW(TransformChain::parse("delta,delta"), UsageError);
    EXPECT_THROW(TransformChain::parse("rle0,delta"), UsageError);
}

TEST(Chain, RoundTripOnSyntheticCases)
{
    for (const auto& ts : synthetic_cases()) {
        for (const char* c : {"none", "d", "d+r", "d+r+q", "r", "q", "d+q", "r+q"}) {
            const TransformChain chain = TransformChain::parse(c);
            const ChainOutput out = chain_apply(ts.samples, chain);
            const ChainHeaders h = ChainHeaders::deserialize(chain, out.headers.serialize(chain));
            ASSERT_EQ(chain_invert(out.values, chain, h), ts.samples) << c;
        }
    }
}

TEST(Chain, RandomRoundTripProperty)
{
    std::mt19937_64 rng(8);
    const std::vector<TransformChain> chains = {TransformChain::parse("d+r+q"), TransformChain::parse("d+q"),
                                                TransformChain::parse("r+q", 16)};
    for (int trial = 0; trial < 300; ++trial) {
        const Samples s = random_series(rng, 1 + rng() % 2000);
        const auto& chain = chains[trial % chains.size()];
        const ChainOutput out = chain_apply(s, chain);
        ASSERT_EQ(chain_invert(out.values, chain, out.headers), s);
    }
}

TEST(Delta, SineShrinksCardinalityAndAad)
{
    SynthSpec spec;
    const Samples s = generate(spec).samples;
    const Samples d = delta_encode(s);
    EXPECT_LT(cardinality(d), cardinality(s));
    EXPECT_LT(aad(d), aad(s));
}
