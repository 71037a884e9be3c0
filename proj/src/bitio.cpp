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

#include "tsc/bitio.hpp"

#include <string>

namespace tsc {

void BitWriter::put(std::uint64_t value, unsigned nbits)
{
    // Feed in chunks of at most 32 bits so the accumulator (holding < 8
    // pending bits) never overflows.
    while (nbits > 0) {
        const unsigned chunk = nbits > 32 ? nbits - 32 : nbits;
        const std::uint64_t part = (value >> (nbits - chunk)) & ((std::uint64_t{1} << chunk) - 1);
        acc_ = (acc_ << chunk) | part;
        pending_ += chunk;
        bits_ += chunk;
        nbits -= chunk;
        while (pending_ >= 8) {
            pending_ -= 8;
            bytes_.push_back(static_cast<std::uint8_t>(acc_ >> pending_));
        }
        acc_ &= (std::uint64_t{1} << pending_) - 1;
    }
}

BitStream BitWriter::finish() &&
{
    if (pending_ > 0)
        bytes_.push_back(static_cast<std::uint8_t>(acc_ << (8 - pending_)));
    return BitStream{std::move(bytes_), bits_};
}

std::uint64_t BitReader::get(unsigned nbits)
{
    if (nbits > remaining())
        throw Error("truncated stream");
    std::uint64_t v = 0;
    while (nbits > 0) {
        const std::uint64_t byte = data_[pos_ >> 3];
        const unsigned offset = pos_ & 7;
        const unsigned avail = 8 - offset;
        const unsigned take = nbits < avail ? nbits : avail;
        const std::uint64_t bits = (byte >> (avail - take)) & ((1u << take) - 1);
        v = (v << take) | bits;
        pos_ += take;
        nbits -= take;
    }
    return v;
}

bool BitReader::get_bit()
{
    return get(1) != 0;
}

std::span<const std::uint8_t> ByteReader::take(std::uint64_t n)
{
    if (n > remaining())
        throw Error(std::string(context_) + ": truncated stream");
    auto s = data_.subspan(pos_, static_cast<std::size_t>(n));
    pos_ += static_cast<std::size_t>(n);
    return s;
}

std::uint64_t ByteReader::le(int n)
{
    if (static_cast<std::size_t>(n) > remaining())
        throw Error(std::string(context_) + ": truncated stream");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i)
        v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
}

} // namespace tsc
