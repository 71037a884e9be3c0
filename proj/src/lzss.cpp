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

#include "tsc/coders.hpp"

namespace tsc {

namespace {

constexpr unsigned kHashBits = 15;

std::uint32_t hash3(const std::uint8_t* p) noexcept
{
    const std::uint32_t v = (std::uint32_t{p[0]} << 16) | (std::uint32_t{p[1]} << 8) | p[2];
    return (v * 2654435761u) >> (32 - kHashBits);
}

// Collects up to 8 tokens behind one flag byte.
class TokenGroup {
public:
    explicit TokenGroup(Bytes& out) noexcept : out_(out) {}

    void literal(std::uint8_t b)
    {
        open();
        out_[flag_pos_] |= static_cast<std::uint8_t>(0x80u >> count_);
        out_.push_back(b);
        ++count_;
    }

    void pair(std::size_t distance, std::size_t length)
    {
        open();
        const auto v = static_cast<std::uint16_t>(((distance - 1) << 4) | (length - kLzssMinMatch));
        out_.push_back(static_cast<std::uint8_t>(v >> 8));
        out_.push_back(static_cast<std::uint8_t>(v));
        ++count_;
    }

private:
    void open()
    {
        if (count_ == 8 || !started_) {
            flag_pos_ = out_.size();
            out_.push_back(0);
            count_ = 0;
            started_ = true;
        }
    }

    Bytes& out_;
    std::size_t flag_pos_ = 0;
    unsigned count_ = 0;
    bool started_ = false;
};

} // namespace

Bytes lzss_encode(std::span<const std::uint8_t> input)
{
    Bytes out;
    out.reserve(input.size() + input.size() / 8 + 1);
    TokenGroup tokens(out);

    const std::size_t n = input.size();
    std::vector<std::int64_t> head(std::size_t{1} << kHashBits, -1);
    std::vector<std::int64_t> prev(n, -1);

    auto insert = [&](std::size_t pos) {
        if (pos + kLzssMinMatch > n)
            return;
        const std::uint32_t h = hash3(&input[pos]);
        prev[pos] = head[h];
        head[h] = static_cast<std::int64_t>(pos);
    };

    std::size_t i = 0;
    while (i < n) {
        std::size_t best_len = 0;
        std::size_t best_dist = 0;
        const std::size_t max_len = std::min(kLzssLookahead, n - i);
        if (max_len >= kLzssMinMatch) {
            for (std::int64_t cand = head[hash3(&input[i])];
                 cand >= 0 && i - static_cast<std::size_t>(cand) <= kLzssWindow; cand = prev[cand]) {
                const auto c = static_cast<std::size_t>(cand);
                std::size_t len = 0;
                while (len < max_len && input[c + len] == input[i + len])
                    ++len;
                if (len > best_len) {
                    best_len = len;
                    best_dist = i - c;
                    if (len == max_len)
                        break;
                }
            }
        }

        if (best_len >= kLzssMinMatch) {
            tokens.pair(best_dist, best_len);
            for (std::size_t k = 0; k < best_len; ++k)
                insert(i + k);
            i += best_len;
        } else {
            tokens.literal(input[i]);
            insert(i);
            ++i;
        }
    }
    return out;
}

Bytes lzss_decode(std::span<const std::uint8_t> input)
{
    Bytes out;
    out.reserve(input.size() * 2);
    std::size_t pos = 0;
    while (pos < input.size()) {
        const std::uint8_t flags = input[pos++];
        for (unsigned bit = 0; bit < 8 && pos < input.size(); ++bit) {
            if (flags & (0x80u >> bit)) {
                out.push_back(input[pos++]);
                continue;
            }
            if (pos + 2 > input.size())
                throw Error("lzss: truncated stream");
            const std::uint16_t v = static_cast<std::uint16_t>((input[pos] << 8) | input[pos + 1]);
            pos += 2;
            const std::size_t distance = (v >> 4) + 1u;
            const std::size_t length = (v & 0x0Fu) + kLzssMinMatch;
            if (distance > out.size())
                throw Error("invalid back-reference");
            const std::size_t from = out.size() - distance;
            for (std::size_t k = 0; k < length; ++k)
                out.push_back(out[from + k]);
        }
    }
    return out;
}

} // namespace tsc
