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

#include "tsc/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace tsc {

namespace {

// Run lengths of equal values in a sorted copy.
std::vector<std::size_t> value_counts(std::span<const std::int32_t> series)
{
    Samples sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        counts.push_back(j - i);
        i = j;
    }
    return counts;
}

} // namespace

std::size_t cardinality(std::span<const std::int32_t> series)
{
    return value_counts(series).size();
}

double aad(std::span<const std::int32_t> series)
{
    if (series.empty())
        throw Error("aad: undefined on empty input");
    long double sum = 0;
    for (const std::int32_t v : series)
        sum += std::abs(static_cast<std::int64_t>(v));
    return static_cast<double>(sum / static_cast<long double>(series.size()));
}

SizeReport size_metrics(std::int64_t original_bytes, std::int64_t compressed_bytes)
{
    if (original_bytes < 1 || compressed_bytes < 1)
        throw Error("size_metrics: sizes must be positive");
    SizeReport r;
    r.original_bytes = original_bytes;
    r.compressed_bytes = compressed_bytes;
    r.cr = static_cast<double>(original_bytes) / static_cast<double>(compressed_bytes);
    r.cs = 1.0 - 1.0 / r.cr;
    return r;
}

double speed_mb_s(std::int64_t original_bytes, double seconds)
{
    if (seconds <= 0.0)
        return 0.0;
    return static_cast<double>(original_bytes) / 1e6 / seconds;
}

SeriesStats entropy_and_limit(std::span<const std::int32_t> series, int reference_bits)
{
    if (series.empty())
        throw Error("entropy_and_limit: undefined on empty input");
    if (reference_bits < 1)
        throw UsageError("entropy_and_limit: reference width must be positive");

    const auto counts = value_counts(series);
    const double n = static_cast<double>(series.size());
    double h = 0.0;
    for (const std::size_t c : counts) {
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    // -0.0 and rounding noise on single-valued inputs
    h = std::max(h, 0.0);

    SeriesStats s;
    s.cardinality = counts.size();
    s.aad = aad(series);
    s.entropy_bits = h;
    s.shannon_cs = 1.0 - h / reference_bits;
    return s;
}

bool fits_int16(std::span<const std::int32_t> series) noexcept
{
    return std::all_of(series.begin(), series.end(),
                       [](std::int32_t v) { return v >= kInt16Min && v <= kInt16Max; });
}

} // namespace tsc
