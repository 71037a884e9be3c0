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

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tsc/core.hpp"

namespace tsc {

enum class SynthCase { sine, noise, sine_noise, switching };

inline constexpr std::array<SynthCase, 4> kAllSynthCases = {SynthCase::sine, SynthCase::noise,
                                                            SynthCase::sine_noise, SynthCase::switching};

std::string_view to_string(SynthCase c) noexcept;
// Throws UsageError listing the valid names.
SynthCase synth_case_from_name(std::string_view name);

struct SynthSpec {
    SynthCase which = SynthCase::sine;
    std::size_t n = 10000;
    std::uint64_t seed = 0;

    std::int32_t amplitude = 1000;
    std::int32_t period = 997;
    std::int32_t noise_half_range = 98;
    std::vector<std::int32_t> levels = {-700, -200, 0, 300, 800};
    // Dwell lengths drawn uniformly from this set.
    std::vector<std::int32_t> dwell_choices = {5, 7, 8};
};

/// Random source for the generators: std::mt19937_64 seeded through
/// std::seed_seq with {seed low, seed high, case, stream}. Both are fully
/// specified by the standard, so output is identical across platforms.
class SynthRng {
public:
    SynthRng(std::uint64_t seed, SynthCase which, std::uint32_t stream);

    // Uniform on [lo, hi] by rejection; independent of library distributions.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

private:
    std::mt19937_64 engine_;
};

TimeSeries generate(const SynthSpec& spec);

} // namespace tsc
