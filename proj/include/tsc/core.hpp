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
#include <vector>

#include "tsc/error.hpp"

namespace tsc {

using Samples = std::vector<std::int32_t>;
using Bytes = std::vector<std::uint8_t>;

inline constexpr std::int32_t kInt16Min = -32768;
inline constexpr std::int32_t kInt16Max = 32767;

/// One channel of an integer time series. Multichannel data is a
/// std::vector<TimeSeries>; channels never interact.
struct TimeSeries {
    Samples samples;
    std::uint16_t channel = 0;

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
    std::span<const std::int32_t> view() const noexcept { return samples; }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

struct SeriesStats {
    std::size_t cardinality = 0;
    double aad = 0.0;
    double entropy_bits = 0.0;  // bits per sample, empirical order-0
    double shannon_cs = 1.0;    // 1 - entropy_bits / reference width
};

struct SizeReport {
    std::int64_t original_bytes = 0;
    std::int64_t compressed_bytes = 0;
    double cr = 0.0;
    double cs = 0.0;
};

std::size_t cardinality(std::span<const std::int32_t> series);

// Average absolute deviation from 0. Throws on empty input.
double aad(std::span<const std::int32_t> series);

SizeReport size_metrics(std::int64_t original_bytes, std::int64_t compressed_bytes);

// Megabytes (10^6 bytes) compressed per second.
double speed_mb_s(std::int64_t original_bytes, double seconds);

/// Empirical order-0 entropy of the series as presented, together with
/// cardinality, AAD and the Shannon-limit compression score relative to
/// `reference_bits` per uncompressed sample (16 for quantized data).
SeriesStats entropy_and_limit(std::span<const std::int32_t> series, int reference_bits = 16);

// True when every sample fits a signed 16-bit integer.
bool fits_int16(std::span<const std::int32_t> series) noexcept;

} // namespace tsc
