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
#include <numeric>
#include <string>

#include "tsc/coders.hpp"

namespace tsc {

namespace {

// Carry-less range coder (Subbotin): 32-bit low/range, bytes emitted from
// the top of `low` whenever its leading byte is settled or the range
// underflows BOT.
constexpr std::uint32_t kTop = 1u << 24;
constexpr std::uint32_t kBot = 1u << 16;

class RangeEncoder {
public:
    explicit RangeEncoder(Bytes& out) noexcept : out_(out) {}

    void encode(std::uint32_t cum, std::uint32_t freq, unsigned total_bits)
    {
        range_ >>= total_bits;
        low_ += cum * range_;
        range_ *= freq;
        normalize();
    }

    void flush()
    {
        for (int i = 0; i < 4; ++i) {
            out_.push_back(static_cast<std::uint8_t>(low_ >> 24));
            low_ <<= 8;
        }
    }

private:
    void normalize()
    {
        for (;;) {
            if ((low_ ^ (low_ + range_)) >= kTop) {
                if (range_ >= kBot)
                    break;
                range_ = (0u - low_) & (kBot - 1);
            }
            out_.push_back(static_cast<std::uint8_t>(low_ >> 24));
            low_ <<= 8;
            range_ <<= 8;
        }
    }

    Bytes& out_;
    std::uint32_t low_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
};

class RangeDecoder {
public:
    explicit RangeDecoder(std::span<const std::uint8_t> in) : in_(in)
    {
        for (int i = 0; i < 4; ++i)
            code_ = (code_ << 8) | next_byte();
    }

    std::uint32_t target(unsigned total_bits)
    {
        range_ >>= total_bits;
        const std::uint32_t t = (code_ - low_) / range_;
        if (t >> total_bits)
            throw Error("range: corrupt stream");
        return t;
    }

    void consume(std::uint32_t cum, std::uint32_t freq)
    {
        low_ += cum * range_;
        range_ *= freq;
        for (;;) {
            if ((low_ ^ (low_ + range_)) >= kTop) {
                if (range_ >= kBot)
                    break;
                range_ = (0u - low_) & (kBot - 1);
            }
            code_ = (code_ << 8) | next_byte();
            low_ <<= 8;
            range_ <<= 8;
        }
    }

private:
    std::uint32_t next_byte()
    {
        if (pos_ >= in_.size())
            throw Error("truncated stream");
        return in_[pos_++];
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
    std::uint32_t low_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
    std::uint32_t code_ = 0;
};

struct Model {
    unsigned mass_bits = kRangeMassBits;
    std::vector<SymbolFrequency> symbols;  // ascending symbol
    std::vector<std::uint32_t> cum;        // cum[i] = sum of freq before i
    std::vector<std::uint32_t> slot;       // cumulative position -> symbol index

    void build_lookup()
    {
        cum.resize(symbols.size());
        slot.assign(std::size_t{1} << mass_bits, 0);
        std::uint32_t c = 0;
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            cum[i] = c;
            std::fill_n(slot.begin() + c, symbols[i].freq, static_cast<std::uint32_t>(i));
            c += symbols[i].freq;
        }
    }
};

unsigned choose_mass_bits(std::size_t distinct)
{
    if (distinct > (std::size_t{1} << kRangeWideMassBits))
        throw Error("range: alphabet too large (" + std::to_string(distinct) + " distinct symbols, max 65536)");
    return distinct > (std::size_t{1} << 12) ? kRangeWideMassBits : kRangeMassBits;
}

} // namespace

std::vector<SymbolFrequency> quantize_frequencies(std::span<const std::int32_t> series, unsigned mass_bits)
{
    if (series.empty())
        throw Error("range: empty series");
    Samples sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<SymbolFrequency> out;
    std::vector<std::uint64_t> counts;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        out.push_back({sorted[i], 0});
        counts.push_back(j - i);
        i = j;
    }

    const std::uint64_t total = std::uint64_t{1} << mass_bits;
    if (out.size() > total)
        throw Error("range: alphabet does not fit the frequency mass");

    const long double scale = static_cast<long double>(total) / static_cast<long double>(series.size());
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto f = static_cast<std::uint64_t>(static_cast<long double>(counts[i]) * scale + 0.5L);
        out[i].freq = static_cast<std::uint32_t>(std::max<std::uint64_t>(1, f));
        assigned += out[i].freq;
    }

    std::int64_t diff = static_cast<std::int64_t>(total) - assigned;
    std::vector<std::size_t> by_count(out.size());
    std::iota(by_count.begin(), by_count.end(), std::size_t{0});
    std::stable_sort(by_count.begin(), by_count.end(),
                     [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
    if (diff > 0) {
        out[by_count.front()].freq += static_cast<std::uint32_t>(diff);
    }
    while (diff < 0) {
        for (const std::size_t i : by_count) {
            if (diff == 0)
                break;
            if (out[i].freq > 1) {
                --out[i].freq;
                ++diff;
            }
        }
    }
    return out;
}

EncodedPayload range_encode(std::span<const std::int32_t> series)
{
    if (series.empty())
        throw Error("range: empty series");
    Model model;
    {
        Samples probe(series.begin(), series.end());
        std::sort(probe.begin(), probe.end());
        const auto distinct = static_cast<std::size_t>(std::unique(probe.begin(), probe.end()) - probe.begin());
        model.mass_bits = choose_mass_bits(distinct);
    }
    model.symbols = quantize_frequencies(series, model.mass_bits);
    model.cum.resize(model.symbols.size());
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < model.symbols.size(); ++i) {
        model.cum[i] = c;
        c += model.symbols[i].freq;
    }

    EncodedPayload out;
    ByteWriter hw(out.bytes);
    hw.u8(static_cast<std::uint8_t>(model.mass_bits));
    hw.u32(static_cast<std::uint32_t>(model.symbols.size()));
    for (const auto& s : model.symbols) {
        hw.i32(s.symbol);
        hw.u16(static_cast<std::uint16_t>(s.freq));
    }
    out.header_bytes = out.bytes.size();

    RangeEncoder enc(out.bytes);
    for (const std::int32_t v : series) {
        const auto it = std::lower_bound(model.symbols.begin(), model.symbols.end(), v,
                                         [](const SymbolFrequency& s, std::int32_t x) { return s.symbol < x; });
        const std::size_t i = static_cast<std::size_t>(it - model.symbols.begin());
        enc.encode(model.cum[i], model.symbols[i].freq, model.mass_bits);
    }
    enc.flush();
    out.body_bits = static_cast<std::uint64_t>(out.bytes.size() - out.header_bytes) * 8;
    return out;
}

Samples range_decode(std::span<const std::uint8_t> bytes, std::size_t count)
{
    ByteReader hr(bytes, "range header");
    Model model;
    model.mass_bits = hr.u8();
    if (model.mass_bits != kRangeMassBits && model.mass_bits != kRangeWideMassBits)
        throw Error("corrupt model: mass bits " + std::to_string(model.mass_bits));
    const std::uint32_t k = hr.u32();
    const std::uint64_t total = std::uint64_t{1} << model.mass_bits;
    if (k == 0 || k > total)
        throw Error("corrupt model: symbol count " + std::to_string(k));
    if (hr.remaining() < std::uint64_t{k} * 6)
        throw Error("range header: truncated stream");
    model.symbols.resize(k);
    std::uint64_t sum = 0;
    for (auto& s : model.symbols) {
        s.symbol = hr.i32();
        s.freq = hr.u16();
        sum += s.freq;
    }
    for (std::size_t i = 0; i < model.symbols.size(); ++i) {
        if (model.symbols[i].freq == 0)
            throw Error("corrupt model: zero frequency");
        if (i > 0 && model.symbols[i].symbol <= model.symbols[i - 1].symbol)
            throw Error("corrupt model: symbols not increasing");
    }
    if (sum != total)
        throw Error("corrupt model: frequencies sum to " + std::to_string(sum) + ", expected " + std::to_string(total));
    model.build_lookup();

    Samples out;
    out.reserve(count);
    if (count == 0)
        return out;
    RangeDecoder dec(hr.rest());
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint32_t t = dec.target(model.mass_bits);
        const std::uint32_t s = model.slot[t];
        dec.consume(model.cum[s], model.symbols[s].freq);
        out.push_back(model.symbols[s].symbol);
    }
    return out;
}

} // namespace tsc
