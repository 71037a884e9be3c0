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
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <queue>
#include <string>

#include "tsc/coders.hpp"

namespace tsc {

namespace {

struct SymbolCount {
    std::int32_t symbol;
    std::uint64_t count;
};

std::vector<SymbolCount> count_symbols(std::span<const std::int32_t> series)
{
    Samples sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<SymbolCount> out;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        out.push_back({sorted[i], j - i});
        i = j;
    }
    return out;
}

// Plain Huffman tree depths; ties broken by node creation order.
std::vector<unsigned> tree_depths(const std::vector<std::uint64_t>& freqs)
{
    const std::size_t k = freqs.size();
    if (k == 1)
        return {1};

    using Item = std::pair<std::uint64_t, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::vector<std::size_t> parent(2 * k - 1, 0);
    for (std::size_t i = 0; i < k; ++i)
        heap.emplace(freqs[i], i);

    std::size_t next = k;
    while (heap.size() > 1) {
        const auto [fa, a] = heap.top();
        heap.pop();
        const auto [fb, b] = heap.top();
        heap.pop();
        parent[a] = next;
        parent[b] = next;
        heap.emplace(fa + fb, next++);
    }

    // internal nodes are created after their children, so walk from the root down
    const std::size_t root = next - 1;
    std::vector<unsigned> depth(2 * k - 1, 0);
    for (std::size_t node = root; node-- > 0;)
        depth[node] = depth[parent[node]] + 1;
    depth.resize(k);
    return depth;
}

// Canonical decode tables indexed by code length.
struct CanonicalTables {
    std::array<std::uint32_t, kMaxHuffmanLength + 2> count{};
    std::array<std::uint64_t, kMaxHuffmanLength + 2> first{};
    std::array<std::uint32_t, kMaxHuffmanLength + 2> offset{};
    std::vector<std::int32_t> symbols;  // ordered by (length, value)
    unsigned max_len = 0;
};

CanonicalTables canonical_tables(const CodeTable& table)
{
    CanonicalTables t;
    std::vector<CodeLength> order = table.entries;
    std::stable_sort(order.begin(), order.end(),
                     [](const CodeLength& a, const CodeLength& b) { return a.length < b.length; });
    for (const auto& e : order) {
        ++t.count[e.length];
        t.symbols.push_back(e.symbol);
        t.max_len = std::max<unsigned>(t.max_len, e.length);
    }
    std::uint64_t code = 0;
    std::uint32_t index = 0;
    for (unsigned len = 1; len <= kMaxHuffmanLength; ++len) {
        t.first[len] = code;
        t.offset[len] = index;
        code = (code + t.count[len]) << 1;
        index += t.count[len];
    }
    return t;
}

void validate(const CodeTable& table)
{
    if (table.entries.empty())
        throw Error("invalid code table: no symbols");
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        const auto& e = table.entries[i];
        if (e.length == 0 || e.length > kMaxHuffmanLength)
            throw Error("invalid code table: code length " + std::to_string(e.length));
        if (i > 0 && e.symbol <= table.entries[i - 1].symbol)
            throw Error("invalid code table: symbols not strictly increasing");
    }
    if (table.kraft_sum() > (std::uint64_t{1} << 32))
        throw Error("invalid code table: Kraft inequality violated");
}

} // namespace

std::uint64_t CodeTable::kraft_sum() const noexcept
{
    std::uint64_t sum = 0;
    for (const auto& e : entries)
        if (e.length >= 1 && e.length <= kMaxHuffmanLength)
            sum += std::uint64_t{1} << (kMaxHuffmanLength - e.length);
    return sum;
}

unsigned CodeTable::max_length() const noexcept
{
    unsigned m = 0;
    for (const auto& e : entries)
        m = std::max<unsigned>(m, e.length);
    return m;
}

CodeTable huffman_code_lengths(std::span<const std::int32_t> series)
{
    if (series.empty())
        throw Error("huffman: empty series");
    const auto symbols = count_symbols(series);
    if (symbols.size() > kMaxHuffmanSymbols)
        throw Error("huffman: alphabet too large (" + std::to_string(symbols.size()) + " distinct symbols, max " +
                    std::to_string(kMaxHuffmanSymbols) + ")");

    std::vector<std::uint64_t> freqs;
    freqs.reserve(symbols.size());
    for (const auto& s : symbols)
        freqs.push_back(s.count);

    auto depths = tree_depths(freqs);
    // Flatten skewed distributions until every code fits.
    while (*std::max_element(depths.begin(), depths.end()) > kMaxHuffmanLength) {
        for (auto& f : freqs)
            f = (f + 1) / 2;
        depths = tree_depths(freqs);
    }

    CodeTable table;
    table.entries.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i)
        table.entries.push_back({symbols[i].symbol, static_cast<std::uint8_t>(depths[i])});
    return table;
}

EncodedPayload huffman_encode(std::span<const std::int32_t> series)
{
    const CodeTable table = huffman_code_lengths(series);
    const CanonicalTables t = canonical_tables(table);

    // Codes per symbol, in table (symbol-sorted) order.
    std::vector<std::uint64_t> codes(table.entries.size());
    {
        std::vector<std::size_t> order(table.entries.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return table.entries[a].length < table.entries[b].length;
        });
        std::array<std::uint64_t, kMaxHuffmanLength + 2> next = t.first;
        for (const std::size_t i : order)
            codes[i] = next[table.entries[i].length]++;
    }

    EncodedPayload out;
    ByteWriter hw(out.bytes);
    hw.u16(static_cast<std::uint16_t>(table.entries.size()));
    for (const auto& e : table.entries) {
        hw.i32(e.symbol);
        hw.u8(e.length);
    }
    out.header_bytes = out.bytes.size();

    BitWriter w;
    for (const std::int32_t v : series) {
        const auto it = std::lower_bound(table.entries.begin(), table.entries.end(), v,
                                         [](const CodeLength& e, std::int32_t x) { return e.symbol < x; });
        const std::size_t i = static_cast<std::size_t>(it - table.entries.begin());
        w.put(codes[i], table.entries[i].length);
    }
    auto body = std::move(w).finish();
    out.body_bits = body.bit_length;
    out.bytes.insert(out.bytes.end(), body.bytes.begin(), body.bytes.end());
    return out;
}

Samples huffman_decode(std::span<const std::uint8_t> bytes, std::size_t count)
{
    ByteReader hr(bytes, "huffman header");
    const std::uint16_t k = hr.u16();
    if (k == 0)
        throw Error("invalid code table: symbol count 0");
    CodeTable table;
    table.entries.resize(k);
    for (auto& e : table.entries) {
        e.symbol = hr.i32();
        e.length = hr.u8();
    }
    validate(table);
    const CanonicalTables t = canonical_tables(table);

    BitReader r(hr.rest());
    Samples out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t code = 0;
        unsigned len = 0;
        for (;;) {
            code = (code << 1) | (r.get_bit() ? 1u : 0u);
            ++len;
            if (len > t.max_len)
                throw Error("huffman: invalid code in stream");
            if (t.count[len] != 0 && code >= t.first[len] && code - t.first[len] < t.count[len]) {
                out.push_back(t.symbols[t.offset[len] + (code - t.first[len])]);
                break;
            }
        }
    }
    return out;
}

BitStream drh_encode(std::span<const std::int32_t> values)
{
    BitWriter w;
    for (const std::int32_t v32 : values) {
        const std::int64_t v = v32;
        const std::uint64_t mag = static_cast<std::uint64_t>(v < 0 ? -v : v);
        const unsigned k = static_cast<unsigned>(std::bit_width(mag));
        // unary category: k ones then a zero
        w.put((std::uint64_t{1} << (k + 1)) - 2, k + 1);
        if (k > 0) {
            const std::uint64_t bits = static_cast<std::uint64_t>(v > 0 ? v : v - 1);
            w.put(bits & ((std::uint64_t{1} << k) - 1), k);
        }
    }
    return std::move(w).finish();
}

Samples drh_decode(std::span<const std::uint8_t> bytes, std::size_t count)
{
    BitReader r(bytes);
    Samples out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        unsigned k = 0;
        while (r.get_bit()) {
            if (++k > 32)
                throw Error("drh: category exceeds 32 bits");
        }
        if (k == 0) {
            out.push_back(0);
            continue;
        }
        const std::int64_t bits = static_cast<std::int64_t>(r.get(k));
        const std::int64_t v = (bits >> (k - 1)) ? bits : bits - (std::int64_t{1} << k) + 1;
        if (v < INT32_MIN || v > INT32_MAX)
            throw Error("drh: value exceeds 32 bits");
        out.push_back(static_cast<std::int32_t>(v));
    }
    return out;
}

} // namespace tsc
