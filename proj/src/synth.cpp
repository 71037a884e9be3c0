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

#include "tsc/synth.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace tsc {

namespace {

constexpr std::uint32_t kStreamNoise = 1;
constexpr std::uint32_t kStreamSineNoise = 2;
constexpr std::uint32_t kStreamSwitching = 3;

Samples sine_wave(const SynthSpec& spec)
{
    Samples out(spec.n);
    const double w = 2.0 * std::numbers::pi / static_cast<double>(spec.period);
    for (std::size_t k = 0; k < spec.n; ++k) {
        // std::round is half-away-from-zero
        out[k] = static_cast<std::int32_t>(std::round(spec.amplitude * std::sin(w * static_cast<double>(k))));
    }
    return out;
}

Samples uniform_noise(const SynthSpec& spec, std::uint32_t stream)
{
    SynthRng rng(spec.seed, spec.which, stream);
    Samples out(spec.n);
    for (auto& v : out)
        v = static_cast<std::int32_t>(rng.uniform(-spec.noise_half_range, spec.noise_half_range));
    return out;
}

Samples switching(const SynthSpec& spec)
{
    const auto levels = static_cast<std::int64_t>(spec.levels.size());
    const auto dwells = static_cast<std::int64_t>(spec.dwell_choices.size());
    SynthRng rng(spec.seed, spec.which, kStreamSwitching);

    Samples out;
    out.reserve(spec.n);
    std::int64_t level = rng.uniform(0, levels - 1);
    while (out.size() < spec.n) {
        const auto dwell = static_cast<std::size_t>(spec.dwell_choices[rng.uniform(0, dwells - 1)]);
        for (std::size_t i = 0; i < dwell && out.size() < spec.n; ++i)
            out.push_back(spec.levels[level]);
        // next level is one of the others, uniformly
        if (levels > 1)
            level = (level + 1 + rng.uniform(0, levels - 2)) % levels;
    }
    return out;
}

void validate(const SynthSpec& spec)
{
    if (spec.n < 1)
        throw UsageError("synth: n must be at least 1");
    switch (spec.which) {
    case SynthCase::sine:
    case SynthCase::sine_noise:
        if (spec.period < 1)
            throw UsageError("synth: period must be positive");
        if (spec.amplitude < 0 || spec.amplitude > kInt16Max)
            throw UsageError("synth: amplitude out of range");
        if (spec.which == SynthCase::sine)
            break;
        [[fallthrough]];
    case SynthCase::noise:
        if (spec.noise_half_range < 0 || spec.noise_half_range > kInt16Max)
            throw UsageError("synth: noise half-range out of range");
        break;
    case SynthCase::switching:
        if (spec.levels.empty())
            throw UsageError("synth: empty level set");
        if (spec.dwell_choices.empty())
            throw UsageError("synth: empty dwell set");
        for (const auto d : spec.dwell_choices) {
            if (d < 1)
                throw UsageError("synth: dwell lengths must be positive");
        }
        break;
    }
}

} // namespace

std::string_view to_string(SynthCase c) noexcept
{
    switch (c) {
    case SynthCase::sine: return "sine";
    case SynthCase::noise: return "noise";
    case SynthCase::sine_noise: return "sine_noise";
    case SynthCase::switching: return "switching";
    }
    return "?";
}

SynthCase synth_case_from_name(std::string_view name)
{
    for (const auto c : kAllSynthCases) {
        if (to_string(c) == name)
            return c;
    }
    if (name == "sine+noise")
        return SynthCase::sine_noise;
    throw UsageError("unknown synthetic case '" + std::string(name) +
                     "' (expected one of: sine, noise, sine_noise, switching)");
}

SynthRng::SynthRng(std::uint64_t seed, SynthCase which, std::uint32_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(which), stream};
    engine_.seed(seq);
}

std::int64_t SynthRng::uniform(std::int64_t lo, std::int64_t hi)
{
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0)
        return static_cast<std::int64_t>(engine_());
    // largest multiple of span that fits in 2^64
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
}

TimeSeries generate(const SynthSpec& spec)
{
    validate(spec);
    TimeSeries ts;
    switch (spec.which) {
    case SynthCase::sine:
        ts.samples = sine_wave(spec);
        break;
    case SynthCase::noise:
        ts.samples = uniform_noise(spec, kStreamNoise);
        break;
    case SynthCase::sine_noise: {
        ts.samples = sine_wave(spec);
        const Samples noise = uniform_noise(spec, kStreamSineNoise);
        for (std::size_t k = 0; k < spec.n; ++k)
            ts.samples[k] += noise[k];
        break;
    }
    case SynthCase::switching:
        ts.samples = switching(spec);
        break;
    }
    return ts;
}

} // namespace tsc
