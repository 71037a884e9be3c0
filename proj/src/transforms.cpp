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

#include "tsc/transforms.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "tsc/bitio.hpp"

namespace tsc {

namespace {

constexpr std::int64_t kI32Min = std::numeric_limits<std::int32_t>::min();
constexpr std::int64_t kI32Max = std::numeric_limits<std::int32_t>::max();

bool fits_i32(std::int64_t v) noexcept
{
    return v >= kI32Min && v <= kI32Max;
}

} // namespace

Samples delta_encode(std::span<const std::int32_t> series)
{
    if (series.empty())
        throw Error("delta_encode: empty series");
    Samples out(series.size());
    out[0] = series[0];
    for (std::size_t k = 1; k < series.size(); ++k) {
        const std::int64_t d = static_cast<std::int64_t>(series[k]) - series[k - 1];
        if (!fits_i32(d))
            throw Error("delta_encode: difference exceeds 32 bits");
        out[k] = static_cast<std::int32_t>(d);
    }
    return out;
}

Samples delta_decode(std::span<const std::int32_t> deltas)
{
    if (deltas.empty())
        throw Error("delta_decode: empty series");
    Samples out(deltas.size());
    std::int64_t acc = 0;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        acc += deltas[k];
        if (!fits_i32(acc))
            throw Error("corrupt delta stream");
        out[k] = static_cast<std::int32_t>(acc);
    }
    return out;
}

Samples rle0_encode(std::span<const std::int32_t> series)
{
    Samples out;
    out.reserve(series.size());
    for (std::size_t i = 0; i < series.size();) {
        if (series[i] != 0) {
            out.push_back(series[i++]);
            continue;
        }
        std::size_t j = i;
        while (j < series.size() && series[j] == 0 && j - i < static_cast<std::size_t>(kI32Max))
            ++j;
        out.push_back(0);
        out.push_back(static_cast<std::int32_t>(j - i));
        i = j;
    }
    return out;
}

Samples rle0_decode(std::span<const std::int32_t> tokens)
{
    Samples out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] != 0) {
            out.push_back(tokens[i]);
            continue;
        }
        if (i + 1 >= tokens.size() || tokens[i + 1] <= 0)
            throw Error("malformed run token");
        out.insert(out.end(), static_cast<std::size_t>(tokens[++i]), 0);
    }
    return out;
}

std::vector<std::uint32_t> zigzag(std::span<const std::int32_t> series)
{
    std::vector<std::uint32_t> out(series.size());
    std::transform(series.begin(), series.end(), out.begin(), [](std::int32_t v) { return zigzag(v); });
    return out;
}

Samples unzigzag(std::span<const std::uint32_t> values)
{
    Samples out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [](std::uint32_t u) { return unzigzag(u); });
    return out;
}

// ---------------------------------------------------------------------------
// QuaRs
// ---------------------------------------------------------------------------

Bytes QuarsMap::serialize() const
{
    if (bins.empty() || bins.size() > 0xFFFF)
        throw Error("QuaRs map: bin count out of range");
    Bytes out;
    ByteWriter w(out);
    w.u16(static_cast<std::uint16_t>(bins.size()));
    for (const auto& b : bins) {
        w.i32(b.lower_bound);
        w.i32(b.target_offset);
    }
    return out;
}

QuarsMap QuarsMap::deserialize(std::span<const std::uint8_t> bytes, std::size_t* consumed)
{
    ByteReader r(bytes, "QuaRs map");
    const std::uint16_t count = r.u16();
    if (count == 0)
        throw Error("corrupt QuaRs map: no bins");
    QuarsMap map;
    map.bins.resize(count);
    for (auto& b : map.bins) {
        b.lower_bound = r.i32();
        b.target_offset = r.i32();
    }
    for (std::size_t i = 1; i < map.bins.size(); ++i)
        if (map.bins[i].lower_bound <= map.bins[i - 1].lower_bound)
            throw Error("corrupt QuaRs map: lower bounds not increasing");
    if (consumed)
        *consumed = r.offset();
    return map;
}

namespace {

struct DistinctValue {
    std::int32_t value;
    std::size_t count;
};

struct BinGroup {
    std::size_t first = 0;  // index into distinct values
    std::size_t last = 0;   // inclusive
    std::size_t mass = 0;
};

std::vector<DistinctValue> distinct_values(std::span<const std::int32_t> series)
{
    Samples sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<DistinctValue> out;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        out.push_back({sorted[i], j - i});
        i = j;
    }
    return out;
}

std::vector<BinGroup> quantile_groups(const std::vector<DistinctValue>& values, std::size_t n, std::size_t bin_count)
{
    std::vector<BinGroup> groups;
    if (values.size() <= bin_count) {
        for (std::size_t i = 0; i < values.size(); ++i)
            groups.push_back({i, i, values[i].count});
        return groups;
    }

    std::size_t unassigned = n;
    std::size_t bins_left = bin_count;
    BinGroup cur;
    bool open = false;

    auto close = [&] {
        groups.push_back(cur);
        unassigned -= cur.mass;
        --bins_left;
        open = false;
    };

    for (std::size_t i = 0; i < values.size(); ++i) {
        if (bins_left == 1) {
            if (!open)
                cur = {i, i, 0};
            cur.last = values.size() - 1;
            for (std::size_t k = i; k < values.size(); ++k)
                cur.mass += values[k].count;
            open = true;
            break;
        }
        double target = static_cast<double>(unassigned) / static_cast<double>(bins_left);
        if (open && static_cast<double>(values[i].count) >= target) {
            close();
            if (bins_left == 1) {
                --i;
                continue;
            }
            target = static_cast<double>(unassigned) / static_cast<double>(bins_left);
        }
        if (!open) {
            cur = {i, i, 0};
            open = true;
        }
        cur.last = i;
        cur.mass += values[i].count;
        if (static_cast<double>(cur.mass) >= target)
            close();
    }
    if (open)
        close();
    return groups;
}

} // namespace

QuarsResult quars_encode(std::span<const std::int32_t> series, std::uint16_t bin_count)
{
    if (series.empty())
        throw Error("quars_encode: empty series");
    if (bin_count == 0)
        throw UsageError("quars_encode: bin count must be positive");

    const auto values = distinct_values(series);
    const auto groups = quantile_groups(values, series.size(), bin_count);

    std::vector<std::size_t> rank(groups.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    auto span_of = [&](const BinGroup& g) {
        return static_cast<std::int64_t>(values[g.last].value) - values[g.first].value + 1;
    };
    // densest bins first (mass per covered integer); groups are in ascending
    // value order, so the index breaks ties
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
        using wide = unsigned __int128;
        return wide(groups[a].mass) * wide(span_of(groups[b])) > wide(groups[b].mass) * wide(span_of(groups[a]));
    });

    QuarsMap map;
    map.bins.resize(groups.size());
    std::int64_t pos_next = 0;
    std::int64_t neg_next = -1;
    for (std::size_t r = 0; r < rank.size(); ++r) {
        const BinGroup& g = groups[rank[r]];
        const std::int64_t span = span_of(g);
        std::int64_t offset;
        if (r % 2 == 0 && r > 0) {
            offset = neg_next - span + 1;
            neg_next = offset - 1;
        } else {
            offset = pos_next;
            pos_next += span;
        }
        if (!fits_i32(offset) || !fits_i32(offset + span - 1))
            throw Error("quars_encode: remapped range exceeds 32 bits");
        map.bins[rank[r]] = {values[g.first].value, static_cast<std::int32_t>(offset)};
    }

    QuarsResult out;
    out.values.reserve(series.size());
    for (const std::int32_t v : series) {
        auto it = std::upper_bound(map.bins.begin(), map.bins.end(), v,
                                   [](std::int32_t x, const QuarsBin& b) { return x < b.lower_bound; });
        const QuarsBin& b = *std::prev(it);
        out.values.push_back(static_cast<std::int32_t>(static_cast<std::int64_t>(b.target_offset) + v - b.lower_bound));
    }
    out.map = std::move(map);
    return out;
}

Samples quars_decode(std::span<const std::int32_t> mapped, const QuarsMap& map)
{
    if (map.bins.empty())
        throw Error("corrupt QuaRs map: no bins");

    std::vector<std::size_t> by_offset(map.bins.size());
    std::iota(by_offset.begin(), by_offset.end(), std::size_t{0});
    std::sort(by_offset.begin(), by_offset.end(), [&](std::size_t a, std::size_t b) {
        return map.bins[a].target_offset < map.bins[b].target_offset;
    });
    for (std::size_t i = 1; i < by_offset.size(); ++i)
        if (map.bins[by_offset[i]].target_offset == map.bins[by_offset[i - 1]].target_offset)
            throw Error("corrupt QuaRs map: overlapping targets");

    Samples out;
    out.reserve(mapped.size());
    for (const std::int32_t y : mapped) {
        auto it = std::upper_bound(by_offset.begin(), by_offset.end(), y, [&](std::int32_t v, std::size_t idx) {
            return v < map.bins[idx].target_offset;
        });
        if (it == by_offset.begin())
            throw Error("value not in QuaRs map");
        const std::size_t bin = *std::prev(it);
        const std::int64_t v = static_cast<std::int64_t>(map.bins[bin].lower_bound) + y - map.bins[bin].target_offset;
        if (!fits_i32(v) || (bin + 1 < map.bins.size() && v >= map.bins[bin + 1].lower_bound))
            throw Error("value not in QuaRs map");
        out.push_back(static_cast<std::int32_t>(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

std::string_view to_string(TransformId id) noexcept
{
    switch (id) {
    case TransformId::delta:
        return "delta";
    case TransformId::rle0:
        return "rle0";
    case TransformId::quars:
        return "quars";
    }
    return "?";
}

TransformChain::TransformChain(std::vector<TransformId> stages, std::uint16_t quars_bins)
    : stages_(std::move(stages)), quars_bins_(quars_bins)
{
    for (const auto id : stages_)
        if (id != TransformId::delta && id != TransformId::rle0 && id != TransformId::quars)
            throw UsageError("unknown transform id " + std::to_string(static_cast<int>(id)));
    for (std::size_t i = 1; i < stages_.size(); ++i)
        if (stages_[i] <= stages_[i - 1])
            throw UsageError("invalid chain order: " + spec() + " (expected delta before rle0 before quars)");
    if (quars_bins_ == 0)
        throw UsageError("QuaRs bin count must be positive");
}

TransformChain TransformChain::parse(std::string_view text, std::uint16_t quars_bins)
{
    std::vector<TransformId> stages;
    if (text.empty() || text == "none")
        return TransformChain({}, quars_bins);

    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find_first_of(",+", start);
        if (end == std::string_view::npos)
            end = text.size();
        const std::string_view tok = text.substr(start, end - start);
        if (tok == "delta" || tok == "d" || tok == "D")
            stages.push_back(TransformId::delta);
        else if (tok == "rle0" || tok == "rle" || tok == "r" || tok == "R")
            stages.push_back(TransformId::rle0);
        else if (tok == "quars" || tok == "q" || tok == "Q")
            stages.push_back(TransformId::quars);
        else
            throw UsageError("unknown transform '" + std::string(tok) + "' (expected delta, rle0, quars)");
        start = end + 1;
    }
    return TransformChain(std::move(stages), quars_bins);
}

bool TransformChain::contains(TransformId id) const noexcept
{
    return std::find(stages_.begin(), stages_.end(), id) != stages_.end();
}

std::string TransformChain::label() const
{
    if (stages_.empty())
        return "none";
    std::string out;
    for (const auto id : stages_) {
        if (!out.empty())
            out += '+';
        out += id == TransformId::delta ? 'D' : id == TransformId::rle0 ? 'R' : 'Q';
    }
    return out;
}

std::string TransformChain::spec() const
{
    if (stages_.empty())
        return "none";
    std::string out;
    for (const auto id : stages_) {
        if (!out.empty())
            out += ',';
        out += to_string(id);
    }
    return out;
}

Bytes ChainHeaders::serialize(const TransformChain& chain) const
{
    if (!chain.contains(TransformId::quars))
        return {};
    if (!quars)
        throw Error("chain headers: missing QuaRs map");
    return quars->serialize();
}

ChainHeaders ChainHeaders::deserialize(const TransformChain& chain, std::span<const std::uint8_t> bytes)
{
    ChainHeaders h;
    std::size_t used = 0;
    if (chain.contains(TransformId::quars))
        h.quars = QuarsMap::deserialize(bytes, &used);
    if (used != bytes.size())
        throw Error("chain headers: trailing bytes");
    return h;
}

ChainOutput chain_apply(std::span<const std::int32_t> series, const TransformChain& chain)
{
    ChainOutput out;
    out.values.assign(series.begin(), series.end());
    for (const auto id : chain.stages()) {
        switch (id) {
        case TransformId::delta:
            out.values = delta_encode(out.values);
            break;
        case TransformId::rle0:
            out.values = rle0_encode(out.values);
            break;
        case TransformId::quars: {
            auto q = quars_encode(out.values, chain.quars_bins());
            out.values = std::move(q.values);
            out.headers.quars = std::move(q.map);
            break;
        }
        }
    }
    return out;
}

Samples chain_invert(std::span<const std::int32_t> values, const TransformChain& chain, const ChainHeaders& headers)
{
    Samples cur(values.begin(), values.end());
    const auto& stages = chain.stages();
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        switch (*it) {
        case TransformId::delta:
            cur = delta_decode(cur);
            break;
        case TransformId::rle0:
            cur = rle0_decode(cur);
            break;
        case TransformId::quars:
            if (!headers.quars)
                throw Error("chain_invert: missing QuaRs map");
            cur = quars_decode(cur, *headers.quars);
            break;
        }
    }
    return cur;
}

} // namespace tsc
