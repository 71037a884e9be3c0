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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsc/backends.hpp"
#include "tsc/coders.hpp"
#include "tsc/core.hpp"
#include "tsc/transforms.hpp"

namespace tsc {

// A coder or backend plus its settings.
struct Method {
    CoderId id = CoderId::huffman;
    std::optional<int> level;
    std::map<std::string, std::string> options;

    // "huffman", "zstd-19"
    std::string label() const;
    BackendDescriptor backend() const { return {id, level, options}; }

    static Method parse(std::string_view name, std::optional<int> level = std::nullopt);
};

struct PipelineDescriptor {
    TransformChain chain;
    Method method;
};

/// One channel as stored in a container. `side_header` holds the coded
/// value count (u64) followed by the chain's stage headers.
struct ChannelBlock {
    std::uint64_t sample_count = 0;
    std::uint8_t width = 2;
    Bytes side_header;
    Bytes payload;

    // Accounting only; not serialized.
    std::size_t model_header_bytes = 0;  // coder model header inside `payload`
    std::uint64_t body_bits = 0;
    std::size_t coded_count = 0;
};

ChannelBlock encode_channel(std::span<const std::int32_t> series, const PipelineDescriptor& pipeline);
Samples decode_channel(const ChannelBlock& block, const PipelineDescriptor& pipeline);

inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr char kContainerMagic[4] = {'T', 'S', 'C', '1'};

struct Container {
    PipelineDescriptor pipeline;
    std::vector<ChannelBlock> channels;
};

/// Layout (little-endian): "TSC1", u8 version, u8 transform count, one u8
/// per transform id, u8 coder id, u16 channel count, then per channel:
/// u64 sample count, u8 width, u32 side-header length + bytes, u64 payload
/// length + payload.
Bytes write_container(const Container& c);
Container read_container(std::span<const std::uint8_t> bytes);

// Bytes of framing in a container that are neither side headers nor payload.
std::size_t container_overhead(std::size_t transform_count, std::size_t channel_count) noexcept;

Container compress_channels(std::span<const TimeSeries> channels, const PipelineDescriptor& pipeline);
Bytes compress(std::span<const TimeSeries> channels, const PipelineDescriptor& pipeline);
std::vector<TimeSeries> decompress(std::span<const std::uint8_t> container_bytes);

} // namespace tsc
