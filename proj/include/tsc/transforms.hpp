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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsc/core.hpp"

namespace tsc {

// Consecutive differences, first sample kept verbatim.
Samples delta_encode(std::span<const std::int32_t> series);
// Prefix sums; throws "corrupt delta stream" on 32-bit overflow.
Samples delta_decode(std::span<const std::int32_t> deltas);

/// Zero-run RLE: each maximal run of k zeros becomes the token pair (0, k),
/// every nonzero value passes through as one token. Runs longer than
/// INT32_MAX are split.
Samples rle0_encode(std::span<const std::int32_t> series);
Samples rle0_decode(std::span<const std::int32_t> tokens);

inline constexpr std::uint32_t zigzag(std::int32_t v) noexcept
{
    return (static_cast<std::uint32_t>(v) << 1) ^ static_cast<std::uint32_t>(v >> 31);
}

inline constexpr std::int32_t unzigzag(std::uint32_t u) noexcept
{
    return static_cast<std::int32_t>((u >> 1) ^ (~(u & 1) + 1));
}

std::vector<std::uint32_t> zigzag(std::span<const std::int32_t> series);
Samples unzigzag(std::span<const std::uint32_t> values);

// ---------------------------------------------------------------------------
// Quantile reshuffling
// ---------------------------------------------------------------------------

inline constexpr std::uint16_t kDefaultQuarsBins = 256;

/// One QuaRs bin: the domain interval starting at `lower_bound` (and ending
/// just before the next bin's lower bound) is shifted so that
/// `lower_bound` lands on `target_offset`.
struct QuarsBin {
    std::int32_t lower_bound = 0;
    std::int32_t target_offset = 0;

    friend bool operator==(const QuarsBin&, const QuarsBin&) = default;
};

/// Bijective value remap. Bins are sorted by lower bound; target ranges
/// never overlap, so the inverse is recovered from the sorted offsets.
struct QuarsMap {
    std::vector<QuarsBin> bins;

    std::size_t bin_count() const noexcept { return bins.size(); }

    // bin_count (u16) followed by (lower bound i32, target offset i32) pairs,
    // little-endian.
    Bytes serialize() const;
    static QuarsMap deserialize(std::span<const std::uint8_t> bytes, std::size_t* consumed = nullptr);

    friend bool operator==(const QuarsMap&, const QuarsMap&) = default;
};

struct QuarsResult {
    Samples values;
    QuarsMap map;
};

/// Fits quantile bins of near-equal sample mass (one bin per distinct value
/// when the cardinality is at most `bin_count`; any value heavier than the
/// running per-bin target gets a bin of its own), ranks bins by occurrences
/// per covered integer (ties: smaller lower bound first) and packs them around zero in
/// rank order: rank 0 starts at 0, odd ranks extend the positive side, even
/// ranks the negative side. Within-bin spacing is preserved.
QuarsResult quars_encode(std::span<const std::int32_t> series, std::uint16_t bin_count = kDefaultQuarsBins);
Samples quars_decode(std::span<const std::int32_t> mapped, const QuarsMap& map);

// ---------------------------------------------------------------------------
// Transform chains
// ---------------------------------------------------------------------------

enum class TransformId : std::uint8_t { delta = 1, rle0 = 2, quars = 3 };

std::string_view to_string(TransformId id) noexcept;

/// Ordered transform stages. Only increasing stage order is accepted
/// (delta before rle0 before quars), which also forbids repeats.
class TransformChain {
public:
    TransformChain() = default;
    explicit TransformChain(std::vector<TransformId> stages, std::uint16_t quars_bins = kDefaultQuarsBins);

    // "none", "" or a comma-separated list of delta,rle0,quars; the
    // shorthand d, d+r, d+r+q (and any '+'-joined d/r/q) is accepted too.
    static TransformChain parse(std::string_view text, std::uint16_t quars_bins = kDefaultQuarsBins);

    const std::vector<TransformId>& stages() const noexcept { return stages_; }
    std::uint16_t quars_bins() const noexcept { return quars_bins_; }
    bool empty() const noexcept { return stages_.empty(); }
    bool contains(TransformId id) const noexcept;

    // "none", "D", "D+R", "D+R+Q", ...
    std::string label() const;
    // "delta,rle0"
    std::string spec() const;

    friend bool operator==(const TransformChain&, const TransformChain&) = default;

private:
    std::vector<TransformId> stages_;
    std::uint16_t quars_bins_ = kDefaultQuarsBins;
};

// Side information a chain needs for inversion.
struct ChainHeaders {
    std::optional<QuarsMap> quars;

    Bytes serialize(const TransformChain& chain) const;
    static ChainHeaders deserialize(const TransformChain& chain, std::span<const std::uint8_t> bytes);
};

struct ChainOutput {
    Samples values;
    ChainHeaders headers;
};

ChainOutput chain_apply(std::span<const std::int32_t> series, const TransformChain& chain);
Samples chain_invert(std::span<const std::int32_t> values, const TransformChain& chain, const ChainHeaders& headers);

} // namespace tsc
