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

#include "tsc/container.hpp"

#include <algorithm>
#include <cstring>

#include "tsc/bitio.hpp"

namespace tsc {

std::string Method::label() const
{
    std::string s(to_string(id));
    if (!is_internal(id)) {
        const auto lvl = level ? level : default_level(id);
        if (lvl)
            s += "-" + std::to_string(*lvl);
    }
    return s;
}

Method Method::parse(std::string_view name, std::optional<int> level)
{
    const auto id = coder_from_name(name);
    if (!id) {
        std::string known;
        for (const auto list : {internal_coders(), backend_coders()}) {
            for (const auto c : list)
                known += (known.empty() ? "" : ", ") + std::string(to_string(c));
        }
        throw UsageError("unregistered backend or coder '" + std::string(name) + "' (expected one of: " + known + ")");
    }
    return Method{*id, level, {}};
}

ChannelBlock encode_channel(std::span<const std::int32_t> series, const PipelineDescriptor& pipeline)
{
    if (series.empty())
        throw Error("cannot encode an empty channel");

    ChainOutput t = chain_apply(series, pipeline.chain);

    ChannelBlock block;
    block.sample_count = series.size();
    block.width = static_cast<std::uint8_t>(natural_width(t.values));
    block.coded_count = t.values.size();

    ByteWriter w(block.side_header);
    w.u64(t.values.size());
    w.raw(t.headers.serialize(pipeline.chain));

    const CoderId id = pipeline.method.id;
    if (is_internal(id)) {
        EncodedPayload p = encode_internal(id, t.values, block.width);
        block.payload = std::move(p.bytes);
        block.model_header_bytes = p.header_bytes;
        block.body_bits = p.body_bits;
    } else {
        BackendDescriptor d = pipeline.method.backend();
        if (!d.options.contains("typesize"))
            d.options["typesize"] = std::to_string(block.width);
        block.payload = backend_compress(serialize_series(t.values, block.width), d);
        block.body_bits = block.payload.size() * 8;
    }
    return block;
}

Samples decode_channel(const ChannelBlock& block, const PipelineDescriptor& pipeline)
{
    ByteReader r(block.side_header, "side header");
    const std::uint64_t coded = r.u64();
    const ChainHeaders headers = ChainHeaders::deserialize(pipeline.chain, r.rest());

    if (block.width != 2 && block.width != 4)
        throw Error("unsupported container: sample width " + std::to_string(block.width));
    // a coded value costs at least one bit in every in-repo coder; backends
    // are bounded by their expected output size
    if (is_internal(pipeline.method.id) && pipeline.method.id != CoderId::lzss &&
        pipeline.method.id != CoderId::range && coded / 8 > block.payload.size() + 1)
        throw Error("truncated stream");

    Samples values;
    const CoderId id = pipeline.method.id;
    if (is_internal(id)) {
        values = decode_internal(id, block.payload, static_cast<std::size_t>(coded), block.width);
    } else {
        const Bytes raw =
            backend_decompress(block.payload, pipeline.method.backend(), static_cast<std::size_t>(coded) * block.width);
        values = deserialize_series(raw, block.width);
    }

    Samples out = chain_invert(values, pipeline.chain, headers);
    if (out.size() != block.sample_count)
        throw Error("decoded " + std::to_string(out.size()) + " samples, container declares " +
                    std::to_string(block.sample_count));
    return out;
}

std::size_t container_overhead(std::size_t transform_count, std::size_t channel_count) noexcept
{
    // magic + version + transform count + ids + coder + channel count
    const std::size_t fixed = 4 + 1 + 1 + transform_count + 1 + 2;
    // sample count + width + side-header length + payload length
    return fixed + channel_count * (8 + 1 + 4 + 8);
}

Bytes write_container(const Container& c)
{
    if (c.channels.size() > 0xFFFF)
        throw UsageError("container: too many channels");
    Bytes out;
    ByteWriter w(out);
    w.raw(std::span(reinterpret_cast<const std::uint8_t*>(kContainerMagic), 4));
    w.u8(kContainerVersion);
    const auto& stages = c.pipeline.chain.stages();
    w.u8(static_cast<std::uint8_t>(stages.size()));
    for (const auto id : stages)
        w.u8(static_cast<std::uint8_t>(id));
    w.u8(static_cast<std::uint8_t>(c.pipeline.method.id));
    w.u16(static_cast<std::uint16_t>(c.channels.size()));
    for (const auto& ch : c.channels) {
        w.u64(ch.sample_count);
        w.u8(ch.width);
        w.u32(static_cast<std::uint32_t>(ch.side_header.size()));
        w.raw(ch.side_header);
        w.u64(ch.payload.size());
        w.raw(ch.payload);
    }
    return out;
}

Container read_container(std::span<const std::uint8_t> bytes)
{
    ByteReader r(bytes, "container");
    if (bytes.size() < 5 || std::memcmp(bytes.data(), kContainerMagic, 4) != 0)
        throw Error("unsupported container: bad magic");
    r.take(4);
    const std::uint8_t version = r.u8();
    if (version != kContainerVersion)
        throw Error("unsupported container version " + std::to_string(version) + " (this build reads version " +
                    std::to_string(kContainerVersion) + ")");

    const std::uint8_t ntransforms = r.u8();
    std::vector<TransformId> stages;
    for (unsigned i = 0; i < ntransforms; ++i) {
        const std::uint8_t id = r.u8();
        if (id < 1 || id > 3)
            throw Error("unsupported container: unknown transform id " + std::to_string(id));
        stages.push_back(static_cast<TransformId>(id));
    }

    Container c;
    try {
        c.pipeline.chain = TransformChain(std::move(stages));
    } catch (const UsageError& e) {
        throw Error(std::string("unsupported container: ") + e.what());
    }
    const std::uint8_t coder = r.u8();
    const auto id = coder_from_byte(coder);
    if (!id)
        throw Error("unsupported container: unknown coder id " + std::to_string(coder));
    c.pipeline.method.id = *id;

    const std::uint16_t nch = r.u16();
    c.channels.resize(nch);
    for (auto& ch : c.channels) {
        ch.sample_count = r.u64();
        ch.width = r.u8();
        const auto side = r.take(r.u32());
        ch.side_header.assign(side.begin(), side.end());
        const auto payload = r.take(r.u64());
        ch.payload.assign(payload.begin(), payload.end());
    }
    if (r.remaining() != 0)
        throw Error("container: trailing bytes");
    return c;
}

Container compress_channels(std::span<const TimeSeries> channels, const PipelineDescriptor& pipeline)
{
    if (channels.empty())
        throw Error("nothing to compress: no channels");
    Container c;
    c.pipeline = pipeline;
    c.channels.reserve(channels.size());
    for (const auto& ch : channels)
        c.channels.push_back(encode_channel(ch.samples, pipeline));
    return c;
}

Bytes compress(std::span<const TimeSeries> channels, const PipelineDescriptor& pipeline)
{
    return write_container(compress_channels(channels, pipeline));
}

std::vector<TimeSeries> decompress(std::span<const std::uint8_t> container_bytes)
{
    const Container c = read_container(container_bytes);
    std::vector<TimeSeries> out;
    out.reserve(c.channels.size());
    for (std::size_t i = 0; i < c.channels.size(); ++i)
        out.push_back(TimeSeries{decode_channel(c.channels[i], c.pipeline), static_cast<std::uint16_t>(i)});
    return out;
}

} // namespace tsc
