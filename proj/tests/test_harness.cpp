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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "tsc/harness.hpp"
#include "tsc/synth.hpp"
#include "tsc/transforms.hpp"

using namespace tsc;

namespace {

BenchInput synthetic(SynthCase c, std::size_t n = 10000)
{
    SynthSpec spec;
    spec.which = c;
    spec.n = n;
    return {std::string(to_string(c)), {generate(spec)}};
}

PipelineDescriptor pipeline(const char* chain, CoderId id)
{
    return {TransformChain::parse(chain), Method{id, std::nullopt, {}}};
}

// order-0 exp-Golomb: 2 floor(log2(v + 1)) + 1 bits
std::uint64_t eg_bits(std::uint32_t v)
{
    return 2 * (std::bit_width(std::uint64_t{v} + 1) - 1) + 1;
}

std::vector<BenchInput> all_cases(std::size_t n)
{
    std::vector<BenchInput> out;
    for (const auto c : kAllSynthCases)
        out.push_back(synthetic(c, n));
    return out;
}

std::vector<TransformChain> four_chains()
{
    std::vector<TransformChain> out;
    for (const char* c : {"none", "d", "d+r", "d+r+q"})
        out.push_back(TransformChain::parse(c));
    return out;
}

std::vector<Method> internal_methods()
{
    std::vector<Method> out;
    for (const auto id : internal_coders())
        out.push_back(Method{id, std::nullopt, {}});
    return out;
}

BenchRecord record(std::string method, std::string chain, std::int64_t original, double cs)
{
    BenchRecord r;
    r.dataset = "d" + std::to_string(original);
    r.method = std::move(method);
    r.chain = std::move(chain);
    r.original_bytes = original;
    r.cs = cs;
    r.roundtrip_ok = true;
    r.status = "ok";
    return r;
}

} // namespace

TEST(RunJob, ConstantSeriesExactSize)
{
    const std::int32_t c = 500;
    const std::size_t n = 10000;
    const BenchInput in{"const", {TimeSeries{Samples(n, c), 0}}};
    const BenchRecord r = run_job(in, pipeline("d+r", CoderId::expgolomb), {1, {}});
    ASSERT_TRUE(r.roundtrip_ok);
    // delta then rle0 leaves the tokens c, 0, n - 1
    const std::uint64_t bits = eg_bits(zigzag(c)) + eg_bits(0) + eg_bits(zigzag(static_cast<std::int32_t>(n - 1)));
    const auto payload = static_cast<std::int64_t>((bits + 7) / 8);
    EXPECT_EQ(r.payload_bytes, payload);
    EXPECT_EQ(r.compressed_bytes, static_cast<std::int64_t>(container_overhead(2, 1) + 8) + payload);
    EXPECT_EQ(r.original_bytes, static_cast<std::int64_t>(2 * n));
    EXPECT_EQ(r.header_bytes, r.compressed_bytes - r.payload_bytes);
    EXPECT_GT(r.cs, 0.9);
    EXPECT_DOUBLE_EQ(r.cs, 1.0 - static_cast<double>(r.compressed_bytes) / static_cast<double>(r.original_bytes));
    EXPECT_DOUBLE_EQ(r.cr, static_cast<double>(r.original_bytes) / static_cast<double>(r.compressed_bytes));
}

TEST(RunJob, HuffmanNoiseTracksShannonLimit)
{
    const BenchInput in = synthetic(SynthCase::noise);
    const BenchRecord r = run_job(in, pipeline("none", CoderId::huffman), {1, {}});
    const SeriesStats st = entropy_and_limit(in.channels[0].samples);
    const double header_share = static_cast<double>(r.header_bytes) / static_cast<double>(r.original_bytes);
    EXPECT_NEAR(r.cs, st.shannon_cs - header_share, 0.05);
    EXPECT_LE(r.payload_cs, st.shannon_cs + 1e-12);
}

TEST(RunJob, WideSeriesCountsFourBytesPerSample)
{
    const BenchInput in{"wide", {TimeSeries{{0, 70000, -70000, 5}, 0}}};
    EXPECT_EQ(run_job(in, pipeline("none", CoderId::bitpack), {1, {}}).original_bytes, 16);
}

TEST(RunJob, TamperedContainerIsHardError)
{
    const BenchInput in = synthetic(SynthCase::sine, 2000);
    RunOptions truncate{1, [](Bytes& b) { b.resize(b.size() - 3); }};
    try {
        run_job(in, pipeline("d", CoderId::huffman), truncate);
        FAIL() << "expected throw";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("round trip failed for sine / D / huffman"), std::string::npos)
            << e.what();
    }
    // flipping bits inside the payload either fails to decode or decodes wrongly
    RunOptions flip{1, [](Bytes& b) { b[b.size() - 10] ^= 0x5A; }};
    EXPECT_THROW(run_job(in, pipeline("none", CoderId::bitpack), flip), Error);
}

TEST(RunJob, UnavailableBackendIsNotApplicable)
{
    const BenchInput in = synthetic(SynthCase::sine, 100);
    for (const auto id : {CoderId::sprintz, CoderId::pcodec}) {
        const BenchRecord r = run_job(in, pipeline("none", id), {1, {}});
        EXPECT_EQ(r.status, "n/a");
        EXPECT_FALSE(r.roundtrip_ok);
        EXPECT_FALSE(r.note.empty());
        EXPECT_THROW(emit_report({r}, ReportFormat::csv, ReportMeta{}), Error);
        const std::string csv = emit_report({r, record("huffman", "none", 100, 0.5)}, ReportFormat::csv, ReportMeta{});
        EXPECT_EQ(csv.find(std::string(to_string(id)) + ","), std::string::npos);
    }
}

TEST(RunJob, EntropyCodersNeverBeatPerTokenEntropy)
{
    for (const auto& in : all_cases(10000)) {
        for (const auto& chain : four_chains()) {
            const ChainOutput t = chain_apply(in.channels[0].samples, chain);
            const SeriesStats st = entropy_and_limit(t.values);
            const double floor_bits = static_cast<double>(t.values.size()) * st.entropy_bits - 64.0;
            for (const auto id : {CoderId::huffman, CoderId::range}) {
                const Container c = compress_channels(in.channels, {chain, Method{id, std::nullopt, {}}});
                EXPECT_GE(static_cast<double>(c.channels[0].body_bits), floor_bits)
                    << in.name << ' ' << chain.label() << ' ' << to_string(id);
            }
        }
    }
}

TEST(Matrix, FullInternalGridRoundTrips)
{
    MatrixOptions opts;
    opts.repetitions = 1;
    opts.threads = 4;
    const MatrixResult m = run_matrix(all_cases(3000), four_chains(), internal_methods(), opts);
    EXPECT_TRUE(m.failures.empty());
    ASSERT_EQ(m.records.size(), 4u * 4u * 6u);
    for (const auto& r : m.records)
        EXPECT_TRUE(r.roundtrip_ok) << r.dataset << ' ' << r.chain << ' ' << r.method;
    EXPECT_EQ(m.records.front().dataset, "sine");
    EXPECT_EQ(m.records.back().dataset, "switching");
    EXPECT_EQ(m.records[6].chain, "D");
    EXPECT_EQ(m.ablations.size(), 4u);

    // sizes do not depend on scheduling
    opts.threads = 1;
    const MatrixResult again = run_matrix(all_cases(3000), four_chains(), internal_methods(), opts);
    ASSERT_EQ(again.records.size(), m.records.size());
    for (std::size_t i = 0; i < m.records.size(); ++i) {
        EXPECT_EQ(again.records[i].compressed_bytes, m.records[i].compressed_bytes);
        EXPECT_EQ(again.records[i].cs, m.records[i].cs);
    }
}

TEST(Matrix, LevelsExpandBackendsOnly)
{
    if (!backend_available(CoderId::deflate))
        GTEST_SKIP() << backend_status(CoderId::deflate);
    MatrixOptions opts;
    opts.repetitions = 1;
    opts.levels = {1, 9};
    const std::vector<Method> methods = {Method{CoderId::huffman, std::nullopt, {}},
                                         Method{CoderId::deflate, std::nullopt, {}}};
    const MatrixResult m = run_matrix({synthetic(SynthCase::sine, 500)}, {TransformChain()}, methods, opts);
    ASSERT_EQ(m.records.size(), 3u);
    EXPECT_EQ(m.records[1].level, 1);
    EXPECT_EQ(m.records[2].level, 9);
}

TEST(Matrix, EmptyAxisIsUsageError)
{
    const auto ds = all_cases(100);
    const auto ch = four_chains();
    const auto me = internal_methods();
    EXPECT_THROW(run_matrix({}, ch, me), UsageError);
    EXPECT_THROW(run_matrix(ds, {}, me), UsageError);
    try {
        run_matrix(ds, ch, {});
        FAIL() << "expected throw";
    } catch (const UsageError& e) {
        EXPECT_STREQ(e.what(), "empty axis: coders");
    }
}

TEST(Summary, MeanAndWeightedMean)
{
    std::vector<BenchRecord> rs = {record("huffman", "D", 100, 0.5), record("huffman", "D", 300, 0.1),
                                   record("bitpack", "D", 100, 0.2)};
    BenchRecord failed = record("huffman", "D", 1000, -5.0);
    failed.roundtrip_ok = false;
    rs.push_back(failed);
    const auto s = summarize(rs);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].method, "huffman");
    EXPECT_EQ(s[0].files, 2u);
    EXPECT_NEAR(s[0].mean_cs, 0.3, 1e-12);
    EXPECT_NEAR(s[0].weighted_cs, (50.0 + 30.0) / 400.0, 1e-12);
    EXPECT_NEAR(s[1].mean_cs, 0.2, 1e-12);
}

TEST(Report, CsvHasOneRowPerRecord)
{
    const std::vector<BenchRecord> rs = {record("huffman", "none", 100, 0.5), record("lzss", "none", 100, -0.25)};
    ReportMeta meta;
    meta.seed = 7;
    const std::string csv = emit_report(rs, ReportFormat::csv, meta);
    std::istringstream in(csv);
    std::string line;
    std::size_t comments = 0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.starts_with('#'))
            ++comments;
        else
            ++rows;
    }
    EXPECT_GE(comments, 3u);
    EXPECT_EQ(rows, 3u);  // header plus two records
    EXPECT_NE(csv.find("# seed: 7"), std::string::npos);
    EXPECT_NE(csv.find(",-0.25,"), std::string::npos);  // sign kept
}

TEST(Report, MarkdownTableClampsNegativeScores)
{
    std::vector<BenchRecord> rs = {record("huffman", "none", 100, 0.5), record("huffman", "D", 100, -0.25)};
    rs[1].dataset = rs[0].dataset;
    const std::string md = emit_report(rs, ReportFormat::markdown, ReportMeta{});
    EXPECT_NE(md.find("| dataset | method | none | D |"), std::string::npos) << md;
    EXPECT_NE(md.find("|---|---|---:|---:|"), std::string::npos);
    EXPECT_NE(md.find("| huffman | 0.500 | 0.000 |"), std::string::npos) << md;
    EXPECT_EQ(md.find("-0.25"), std::string::npos);
}

TEST(Report, JsonRoundTrip)
{
    const MatrixResult m = run_matrix({synthetic(SynthCase::switching, 1000)}, four_chains(), internal_methods(),
                                      {1, 2, {}});
    ReportMeta meta = default_report_meta();
    meta.seed = 3;
    meta.repetitions = 1;
    const std::string text = emit_report(m.records, ReportFormat::json, meta);
    const PlotData back = parse_plotdata(text);
    EXPECT_EQ(back.records, m.records);
    EXPECT_EQ(back.meta.seed, std::optional<std::uint64_t>{3});
    EXPECT_EQ(back.meta.backends, meta.backends);

    const auto j = nlohmann::json::parse(text);
    EXPECT_EQ(j.at("by_method").at("huffman").size(), 4u);
    EXPECT_EQ(j.at("by_dataset").at("switching").size(), 6u);
}

TEST(Report, AblationFormats)
{
    const AblationRow row = ablate(synthetic(SynthCase::switching));
    EXPECT_EQ(row.stages[0].cardinality, 5u);
    EXPECT_LT(row.stages[3].aad * 10.0, row.stages[2].aad);
    const std::string md = emit_ablation({row}, ReportFormat::markdown);
    EXPECT_NE(md.find("switching"), std::string::npos);
    const auto j = nlohmann::json::parse(emit_ablation({row}, ReportFormat::json));
    EXPECT_FALSE(j.empty());
    const std::string csv = emit_ablation({row}, ReportFormat::csv);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Report, FormatNames)
{
    EXPECT_EQ(report_format_from_name("md"), ReportFormat::markdown);
    EXPECT_EQ(report_format_from_name("json-plotdata"), ReportFormat::json);
    EXPECT_EQ(report_format_from_name("csv"), ReportFormat::csv);
    EXPECT_THROW(report_format_from_name("xml"), UsageError);
}
