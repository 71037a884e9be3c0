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

#include <cmath>
#include <numbers>

#include "tsc/synth.hpp"
#include "tsc/transforms.hpp"

using namespace tsc;

namespace {

TimeSeries make(SynthCase c, std::uint64_t seed = 0)
{
    SynthSpec spec;
    spec.which = c;
    spec.seed = seed;
    return generate(spec);
}

} // namespace

TEST(Synth, Deterministic)
{
    for (const auto c : kAllSynthCases) {
        EXPECT_EQ(make(c, 7), make(c, 7));
        if (c != SynthCase::sine)
            EXPECT_NE(make(c, 7), make(c, 8));
    }
}

TEST(Synth, PinnedPrefixes)
{
    // golden values come from tools/oracles/synth_prefix.py, an independent model
    // of seed_seq and mt19937_64
    const Samples noise = make(SynthCase::noise).samples;
    const Samples sw = make(SynthCase::switching).samples;
    const Samples noise_prefix(noise.begin(), noise.begin() + 8);
    const Samples sw_prefix(sw.begin(), sw.begin() + 16);
    EXPECT_EQ(noise_prefix, (Samples{51, 72, -96, 67, 87, 76, -93, 12}));
    EXPECT_EQ(sw_prefix, (Samples{0, 0, 0, 0, 0, -200, -200, -200, -200, -200, -200, -200, 800, 800, 800, 800}));
}

TEST(Synth, SineMatchesClosedForm)
{
    const Samples s = make(SynthCase::sine).samples;
    ASSERT_EQ(s.size(), 10000u);
    for (std::size_t k = 0; k < s.size(); k += 97) {
        const double x = 1000.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / 997.0);
        EXPECT_EQ(s[k], static_cast<std::int32_t>(std::round(x)));
    }
    const double expected = 2.0 * 1000.0 / std::numbers::pi;
    EXPECT_NEAR(aad(s), expected, 0.05 * expected);
    EXPECT_GT(cardinality(s), 500u);
}

TEST(Synth, NoiseStatistics)
{
    const Samples s = make(SynthCase::noise).samples;
    EXPECT_LE(cardinality(s), 197u);
    for (const auto v : s) {
        ASSERT_GE(v, -98);
        ASSERT_LE(v, 98);
    }
    // E|U| for U uniform on {-a..a} is a(a+1)/(2a+1) ~ (a+1)/2
    const double expected = 49.5;
    EXPECT_NEAR(aad(s), expected, 0.05 * expected);
}

TEST(Synth, SwitchingHasFiveLevels)
{
    const Samples s = make(SynthCase::switching).samples;
    EXPECT_EQ(cardinality(s), 5u);
    // dwell lengths are drawn from {5, 7, 8}; only the last run may be cut short
    std::size_t run = 1;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] == s[i - 1]) {
            ++run;
            continue;
        }
        EXPECT_TRUE(run == 5 || run == 7 || run == 8) << run;
        run = 1;
    }
}

TEST(Synth, DeltaDirectionsPerCase)
{
    const auto check = [](SynthCase c, bool shrinks) {
        const Samples s = make(c).samples;
        const Samples d = delta_encode(s);
        if (shrinks) {
            EXPECT_LT(cardinality(d), cardinality(s)) << to_string(c);
            EXPECT_LT(aad(d), aad(s)) << to_string(c);
        } else {
            EXPECT_GT(cardinality(d), cardinality(s)) << to_string(c);
            EXPECT_GT(aad(d), aad(s)) << to_string(c);
        }
    };
    check(SynthCase::sine, true);
    check(SynthCase::sine_noise, true);
    check(SynthCase::noise, false);
    EXPECT_LE(cardinality(delta_encode(make(SynthCase::sine).samples)), 20u);
}

TEST(Synth, NoiseAndSineNoiseEntropyMatchAfterDelta)
{
    const double h1 = entropy_and_limit(delta_encode(make(SynthCase::noise).samples)).entropy_bits;
    const double h2 = entropy_and_limit(delta_encode(make(SynthCase::sine_noise).samples)).entropy_bits;
    EXPECT_LE(std::abs(h1 - h2), 0.1);
}

TEST(Synth, RngUniformBounds)
{
    SynthRng rng(1, SynthCase::noise, 9);
    std::array<int, 7> hist{};
    for (int i = 0; i < 70000; ++i) {
        const auto v = rng.uniform(-3, 3);
        ASSERT_GE(v, -3);
        ASSERT_LE(v, 3);
        ++hist[static_cast<std::size_t>(v + 3)];
    }
    for (const int h : hist)
        EXPECT_NEAR(h, 10000, 500);
    EXPECT_EQ(rng.uniform(5, 5), 5);
}

TEST(Synth, Errors)
{
    EXPECT_THROW(synth_case_from_name("square"), UsageError);
    EXPECT_EQ(synth_case_from_name("sine_noise"), SynthCase::sine_noise);
    SynthSpec spec;
    spec.n = 0;
    EXPECT_THROW(generate(spec), UsageError);
    spec.n = 10;
    spec.which = SynthCase::switching;
    spec.levels.clear();
    EXPECT_THROW(generate(spec), UsageError);
}
