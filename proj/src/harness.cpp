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

#include "tsc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "tsc/backends.hpp"

namespace tsc {

namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::json;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::int64_t original_size(const std::vector<TimeSeries>& channels)
{
    std::int64_t total = 0;
    for (const auto& ch : channels)
        total += static_cast<std::int64_t>(ch.size()) * (fits_int16(ch.samples) ? 2 : 4);
    return total;
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fixed(double v, int digits)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string method_label(const BenchRecord& r)
{
    return r.level ? r.method + "-" + std::to_string(*r.level) : r.method;
}

std::vector<const BenchRecord*> reportable(const std::vector<BenchRecord>& records)
{
    std::vector<const BenchRecord*> out;
    for (const auto& r : records) {
        if (r.roundtrip_ok)
            out.push_back(&r);
    }
    return out;
}

// Distinct values in first-seen order.
template <class F>
std::vector<std::string> ordered_keys(const std::vector<const BenchRecord*>& rs, F key)
{
    std::vector<std::string> out;
    for (const auto* r : rs) {
        std::string k = key(*r);
        if (std::find(out.begin(), out.end(), k) == out.end())
            out.push_back(std::move(k));
    }
    return out;
}

json meta_json(const ReportMeta& m)
{
    json j;
    j["tool_version"] = m.tool_version;
    j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
    j["repetitions"] = m.repetitions;
    j["backends"] = m.backends;
    return j;
}

json record_json(const BenchRecord& r)
{
    return json{{"dataset", r.dataset},
                {"chain", r.chain},
                {"method", r.method},
                {"level", r.level ? json(*r.level) : json(nullptr)},
                {"original_bytes", r.original_bytes},
                {"compressed_bytes", r.compressed_bytes},
                {"payload_bytes", r.payload_bytes},
                {"header_bytes", r.header_bytes},
                {"cr", r.cr},
                {"cs", r.cs},
                {"payload_cs", r.payload_cs},
                {"compress_seconds", r.compress_seconds},
                {"decompress_seconds", r.decompress_seconds},
                {"speed_mb_s", r.speed_mb_s},
                {"decompress_speed_mb_s", r.decompress_speed_mb_s},
                {"repetitions", r.repetitions},
                {"timer_resolution", r.timer_resolution},
                {"roundtrip_ok", r.roundtrip_ok},
                {"status", r.status},
                {"note", r.note}};
}

BenchRecord record_from_json(const json& j)
{
    BenchRecord r;
    r.dataset = j.at("dataset").get<std::string>();
    r.chain = j.at("chain").get<std::string>();
    r.method = j.at("method").get<std::string>();
    if (!j.at("level").is_null())
        r.level = j.at("level").get<int>();
    r.original_bytes = j.at("original_bytes").get<std::int64_t>();
    r.compressed_bytes = j.at("compressed_bytes").get<std::int64_t>();
    r.payload_bytes = j.at("payload_bytes").get<std::int64_t>();
    r.header_bytes = j.at("header_bytes").get<std::int64_t>();
    r.cr = j.at("cr").get<double>();
    r.cs = j.at("cs").get<double>();
    r.payload_cs = j.at("payload_cs").get<double>();
    r.compress_seconds = j.at("compress_seconds").get<double>();
    r.decompress_seconds = j.at("decompress_seconds").get<double>();
    r.speed_mb_s = j.at("speed_mb_s").get<double>();
    r.decompress_speed_mb_s = j.at("decompress_speed_mb_s").get<double>();
    r.repetitions = j.at("repetitions").get<unsigned>();
    r.timer_resolution = j.at("timer_resolution").get<double>();
    r.roundtrip_ok = j.at("roundtrip_ok").get<bool>();
    r.status = j.at("status").get<std::string>();
    r.note = j.at("note").get<std::string>();
    return r;
}

std::string report_csv(const std::vector<const BenchRecord*>& rs, const ReportMeta& meta)
{
    std::ostringstream out;
    out << "# tool_version: " << meta.tool_version << '\n';
    out << "# seed: " << (meta.seed ? std::to_string(*meta.seed) : std::string("none")) << '\n';
    out << "# repetitions: " << meta.repetitions << '\n';
    for (const auto& [name, status] : meta.backends)
        out << "# backend " << name << ": " << status << '\n';
    out << "dataset,chain,method,level,original_bytes,compressed_bytes,payload_bytes,header_bytes,cr,cs,payload_cs,"
           "compress_seconds,decompress_seconds,speed_mb_s,decompress_speed_mb_s,repetitions,timer_resolution,"
           "roundtrip_ok\n";
    for (const auto* r : rs) {
        out << csv_field(r->dataset) << ',' << csv_field(r->chain) << ',' << csv_field(r->method) << ','
            << (r->level ? std::to_string(*r->level) : std::string()) << ',' << r->original_bytes << ','
            << r->compressed_bytes << ',' << r->payload_bytes << ',' << r->header_bytes << ','
            << format_double(r->cr) << ',' << format_double(r->cs) << ',' << format_double(r->payload_cs) << ','
            << format_double(r->compress_seconds) << ',' << format_double(r->decompress_seconds) << ','
            << format_double(r->speed_mb_s) << ',' << format_double(r->decompress_speed_mb_s) << ','
            << r->repetitions << ',' << format_double(r->timer_resolution) << ','
            << (r->roundtrip_ok ? "true" : "false") << '\n';
    }
    return out.str();
}

// Rows dataset x method, one CS column per chain.
std::string report_markdown(const std::vector<const BenchRecord*>& rs, const ReportMeta& meta)
{
    const auto chains = ordered_keys(rs, [](const BenchRecord& r) { return r.chain; });
    const auto datasets = ordered_keys(rs, [](const BenchRecord& r) { return r.dataset; });
    const auto methods = ordered_keys(rs, method_label);

    std::map<std::tuple<std::string, std::string, std::string>, double> cs;
    for (const auto* r : rs)
        cs[{r->dataset, method_label(*r), r->chain}] = r->cs;

    std::ostringstream out;
    out << "tool " << meta.tool_version << ", repetitions " << meta.repetitions;
    if (meta.seed)
        out << ", seed " << *meta.seed;
    out << "\n\n| dataset | method |";
    for (const auto& c : chains)
        out << ' ' << c << " |";
    out << "\n|---|---|";
    for (std::size_t i = 0; i < chains.size(); ++i)
        out << "---:|";
    out << '\n';
    for (const auto& d : datasets) {
        for (const auto& m : methods) {
            bool any = false;
            std::string row = "| " + d + " | " + m + " |";
            for (const auto& c : chains) {
                const auto it = cs.find({d, m, c});
                if (it == cs.end()) {
                    row += " n/a |";
                    continue;
                }
                any = true;
                row += ' ' + fixed(std::max(0.0, it->second), 3) + " |";
            }
            if (any)
                out << row << '\n';
        }
    }
    return out.str();
}

std::string report_json(const std::vector<const BenchRecord*>& rs, const ReportMeta& meta)
{
    json j;
    j["metadata"] = meta_json(meta);
    j["records"] = json::array();
    json by_method = json::object();
    json by_dataset = json::object();
    for (const auto* r : rs) {
        j["records"].push_back(record_json(*r));
        by_method[method_label(*r)].push_back(
            {{"dataset", r->dataset}, {"chain", r->chain}, {"cs", r->cs}, {"speed_mb_s", r->speed_mb_s}});
        by_dataset[r->dataset][method_label(*r)].push_back({{"chain", r->chain}, {"cs", r->cs}});
    }
    j["by_method"] = std::move(by_method);
    j["by_dataset"] = std::move(by_dataset);
    return j.dump(2) + "\n";
}

Samples pooled(const BenchInput& input, const TransformChain& chain)
{
    Samples all;
    for (const auto& ch : input.channels) {
        const ChainOutput t = chain_apply(ch.samples, chain);
        all.insert(all.end(), t.values.begin(), t.values.end());
    }
    return all;
}

} // namespace

BenchRecord run_job(const BenchInput& input, const PipelineDescriptor& pipeline, const RunOptions& options)
{
    BenchRecord rec;
    rec.dataset = input.name;
    rec.chain = pipeline.chain.label();
    rec.method = std::string(to_string(pipeline.method.id));
    if (!is_internal(pipeline.method.id))
        rec.level = pipeline.method.level ? pipeline.method.level : default_level(pipeline.method.id);
    rec.original_bytes = original_size(input.channels);
    rec.repetitions = std::max(1u, options.repetitions);
    rec.timer_resolution = static_cast<double>(Clock::period::num) / Clock::period::den;

    if (!is_internal(pipeline.method.id) && !backend_available(pipeline.method.id)) {
        rec.status = "n/a";
        rec.note = backend_status(pipeline.method.id);
        return rec;
    }

    Container container;
    Bytes packed;
    double best_c = 0.0;
    for (unsigned i = 0; i < rec.repetitions; ++i) {
        const auto t0 = Clock::now();
        container = compress_channels(input.channels, pipeline);
        packed = write_container(container);
        const double dt = seconds_since(t0);
        best_c = i == 0 ? dt : std::min(best_c, dt);
    }

    Bytes stored = packed;
    if (options.tamper)
        options.tamper(stored);

    const std::string where = input.name + " / " + rec.chain + " / " + rec.method;
    std::vector<TimeSeries> restored;
    double best_d = 0.0;
    for (unsigned i = 0; i < rec.repetitions; ++i) {
        const auto t0 = Clock::now();
        try {
            restored = decompress(stored);
        } catch (const BackendUnavailable&) {
            throw;
        } catch (const std::exception& e) {
            throw Error("round trip failed for " + where + ": " + e.what());
        }
        const double dt = seconds_since(t0);
        best_d = i == 0 ? dt : std::min(best_d, dt);
    }
    if (restored.size() != input.channels.size())
        throw Error("round-trip mismatch for " + where + ": channel count");
    for (std::size_t c = 0; c < restored.size(); ++c) {
        if (restored[c].samples != input.channels[c].samples)
            throw Error("round-trip mismatch for " + where + ": channel " + std::to_string(c));
    }

    std::int64_t payload = 0;
    for (const auto& ch : container.channels)
        payload += static_cast<std::int64_t>((ch.body_bits + 7) / 8);

    rec.compressed_bytes = static_cast<std::int64_t>(packed.size());
    rec.payload_bytes = payload;
    rec.header_bytes = rec.compressed_bytes - payload;
    const SizeReport sr = size_metrics(rec.original_bytes, rec.compressed_bytes);
    rec.cr = sr.cr;
    rec.cs = sr.cs;
    rec.payload_cs = 1.0 - static_cast<double>(payload) / static_cast<double>(rec.original_bytes);
    rec.compress_seconds = best_c;
    rec.decompress_seconds = best_d;
    rec.speed_mb_s = speed_mb_s(rec.original_bytes, best_c);
    rec.decompress_speed_mb_s = speed_mb_s(rec.original_bytes, best_d);
    rec.roundtrip_ok = true;
    rec.status = "ok";
    return rec;
}

AblationRow ablate(const BenchInput& input)
{
    using T = TransformId;
    const std::array<TransformChain, 4> chains = {TransformChain(), TransformChain({T::delta}),
                                                  TransformChain({T::delta, T::rle0}),
                                                  TransformChain({T::delta, T::rle0, T::quars})};
    AblationRow row;
    row.dataset = input.name;
    for (std::size_t i = 0; i < chains.size(); ++i)
        row.stages[i] = entropy_and_limit(pooled(input, chains[i]));
    return row;
}

MatrixResult run_matrix(const std::vector<BenchInput>& datasets, const std::vector<TransformChain>& chains,
                        const std::vector<Method>& methods, const MatrixOptions& options)
{
    if (datasets.empty())
        throw UsageError("empty axis: datasets");
    if (chains.empty())
        throw UsageError("empty axis: chains");
    if (methods.empty())
        throw UsageError("empty axis: coders");

    std::vector<Method> expanded;
    for (const auto& m : methods) {
        if (is_internal(m.id) || options.levels.empty()) {
            expanded.push_back(m);
            continue;
        }
        for (const int lvl : options.levels) {
            Method copy = m;
            copy.level = lvl;
            expanded.push_back(std::move(copy));
        }
    }

    struct Cell {
        std::size_t dataset, chain, method;
    };
    std::vector<Cell> cells;
    for (std::size_t d = 0; d < datasets.size(); ++d)
        for (std::size_t c = 0; c < chains.size(); ++c)
            for (std::size_t m = 0; m < expanded.size(); ++m)
                cells.push_back({d, c, m});

    std::vector<std::optional<BenchRecord>> slots(cells.size());
    std::vector<std::string> errors(cells.size());
    std::atomic<std::size_t> next{0};
    RunOptions run;
    run.repetitions = options.repetitions;

    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const Cell& cell = cells[i];
            try {
                slots[i] = run_job(datasets[cell.dataset], {chains[cell.chain], expanded[cell.method]}, run);
            } catch (const std::exception& e) {
                errors[i] = datasets[cell.dataset].name + " / " + chains[cell.chain].label() + " / " +
                            expanded[cell.method].label() + ": " + e.what();
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();

    MatrixResult result;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (slots[i])
            result.records.push_back(std::move(*slots[i]));
        else
            result.failures.push_back(std::move(errors[i]));
    }
    for (const auto& d : datasets)
        result.ablations.push_back(ablate(d));
    return result;
}

std::vector<ScoreSummary> summarize(const std::vector<BenchRecord>& records)
{
    std::vector<ScoreSummary> out;
    std::vector<double> weights;
    for (const auto& r : records) {
        if (!r.roundtrip_ok)
            continue;
        const std::string m = method_label(r);
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const ScoreSummary& s) { return s.method == m && s.chain == r.chain; });
        if (it == out.end()) {
            out.push_back({m, r.chain, 0, 0.0, 0.0});
            weights.push_back(0.0);
            it = out.end() - 1;
        }
        const auto idx = static_cast<std::size_t>(it - out.begin());
        ++it->files;
        it->mean_cs += r.cs;
        it->weighted_cs += r.cs * static_cast<double>(r.original_bytes);
        weights[idx] += static_cast<double>(r.original_bytes);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].mean_cs /= static_cast<double>(out[i].files);
        out[i].weighted_cs /= weights[i];
    }
    return out;
}

ReportFormat report_format_from_name(std::string_view name)
{
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "markdown" || name == "md" || name == "markdown-table")
        return ReportFormat::markdown;
    if (name == "json" || name == "json-plotdata")
        return ReportFormat::json;
    throw UsageError("unknown report format '" + std::string(name) + "' (expected csv, markdown, json)");
}

ReportMeta default_report_meta()
{
    ReportMeta meta;
    for (const auto id : backend_coders())
        meta.backends[std::string(to_string(id))] = backend_status(id);
    return meta;
}

std::string emit_report(const std::vector<BenchRecord>& records, ReportFormat format, const ReportMeta& meta)
{
    const auto rs = reportable(records);
    if (rs.empty())
        throw UsageError("nothing to report: no verified records");
    switch (format) {
    case ReportFormat::csv: return report_csv(rs, meta);
    case ReportFormat::markdown: return report_markdown(rs, meta);
    case ReportFormat::json: return report_json(rs, meta);
    }
    throw UsageError("unknown report format");
}

std::string emit_ablation(const std::vector<AblationRow>& rows, ReportFormat format)
{
    if (rows.empty())
        throw UsageError("nothing to report: no ablation rows");
    std::ostringstream out;
    switch (format) {
    case ReportFormat::csv:
        out << "dataset,stage,cardinality,aad,entropy_bits,shannon_cs\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.stages.size(); ++i) {
                const auto& s = r.stages[i];
                out << csv_field(r.dataset) << ',' << AblationRow::kLabels[i] << ',' << s.cardinality << ','
                    << format_double(s.aad) << ',' << format_double(s.entropy_bits) << ','
                    << format_double(s.shannon_cs) << '\n';
            }
        }
        break;
    case ReportFormat::markdown:
        out << "Cardinality / AAD\n\n| case | none | D | D+R | D+R+Q |\n|---|---:|---:|---:|---:|\n";
        for (const auto& r : rows) {
            out << "| " << r.dataset << " |";
            for (const auto& s : r.stages)
                out << ' ' << s.cardinality << " / " << fixed(s.aad, 1) << " |";
            out << '\n';
        }
        out << "\nShannon limit (CS)\n\n| case | none | D | D+R | D+R+Q |\n|---|---:|---:|---:|---:|\n";
        for (const auto& r : rows) {
            out << "| " << r.dataset << " |";
            for (const auto& s : r.stages)
                out << ' ' << fixed(std::max(0.0, s.shannon_cs), 3) << " |";
            out << '\n';
        }
        break;
    case ReportFormat::json: {
        json j = json::array();
        for (const auto& r : rows) {
            json stages = json::object();
            for (std::size_t i = 0; i < r.stages.size(); ++i) {
                const auto& s = r.stages[i];
                stages[std::string(AblationRow::kLabels[i])] = {{"cardinality", s.cardinality},
                                                                {"aad", s.aad},
                                                                {"entropy_bits", s.entropy_bits},
                                                                {"shannon_cs", s.shannon_cs}};
            }
            j.push_back({{"dataset", r.dataset}, {"stages", std::move(stages)}});
        }
        out << j.dump(2) << '\n';
        break;
    }
    }
    return out.str();
}

PlotData parse_plotdata(std::string_view text)
{
    PlotData pd;
    try {
        const json j = json::parse(text);
        const json& m = j.at("metadata");
        pd.meta.tool_version = m.at("tool_version").get<std::string>();
        if (!m.at("seed").is_null())
            pd.meta.seed = m.at("seed").get<std::uint64_t>();
        pd.meta.repetitions = m.at("repetitions").get<unsigned>();
        pd.meta.backends = m.at("backends").get<std::map<std::string, std::string>>();
        for (const auto& r : j.at("records"))
            pd.records.push_back(record_from_json(r));
    } catch (const json::exception& e) {
        throw Error(std::string("malformed plot data: ") + e.what());
    }
    return pd;
}

} // namespace tsc
