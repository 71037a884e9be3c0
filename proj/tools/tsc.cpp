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

// tsc: compress integer time series, run benchmark matrices and ablations.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 backend unavailable.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

#include "tsc/container.hpp"
#include "tsc/harness.hpp"
#include "tsc/ingest.hpp"
#include "tsc/synth.hpp"

namespace fs = std::filesystem;
using namespace tsc;

namespace {

constexpr const char* kDataDirEnv = "TSC_DATA_DIR";

enum Exit { kOk = 0, kUsage = 1, kData = 2, kUnavailable = 3 };

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

Bytes read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const std::string_view data)
{
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path);
    out << data;
}

CsvOptions csv_options(const std::vector<std::string>& columns, const std::string& header, const std::string& missing)
{
    CsvOptions o;
    o.columns = columns;
    if (header == "auto")
        o.header = HeaderMode::autodetect;
    else if (header == "yes")
        o.header = HeaderMode::present;
    else if (header == "no")
        o.header = HeaderMode::absent;
    else
        throw UsageError("unknown --header value '" + header + "' (expected auto, yes, no)");
    if (missing == "drop")
        o.missing = MissingPolicy::drop_row;
    else if (missing == "error")
        o.missing = MissingPolicy::error;
    else
        throw UsageError("unknown --missing value '" + missing + "' (expected drop, error)");
    return o;
}

std::vector<SynthCase> parse_cases(const std::string& text)
{
    if (text == "all")
        return {kAllSynthCases.begin(), kAllSynthCases.end()};
    std::vector<SynthCase> out;
    for (const auto& name : split_list(text))
        out.push_back(synth_case_from_name(name));
    if (out.empty())
        throw UsageError("empty axis: cases");
    return out;
}

std::vector<Method> parse_methods(const std::string& text, std::optional<int> level)
{
    std::vector<Method> out;
    for (const auto& name : split_list(text)) {
        if (name == "all-internal" || name == "all") {
            for (const auto id : internal_coders())
                out.push_back({id, std::nullopt, {}});
        }
        if (name == "all-backends" || name == "all") {
            for (const auto id : backend_coders())
                out.push_back({id, level, {}});
        }
        if (name != "all-internal" && name != "all-backends" && name != "all")
            out.push_back(Method::parse(name, level));
    }
    return out;
}

std::vector<TransformChain> parse_chains(const std::string& text, std::uint16_t bins)
{
    std::vector<TransformChain> out;
    for (const auto& c : split_list(text))
        out.push_back(TransformChain::parse(c, bins));
    return out;
}

// Files named directly, or every *.csv under a directory (sorted).
std::vector<fs::path> collect_inputs(const std::vector<std::string>& args)
{
    std::vector<fs::path> out;
    for (const auto& a : args) {
        const fs::path p(a);
        if (fs::is_directory(p)) {
            std::vector<fs::path> found;
            for (const auto& e : fs::recursive_directory_iterator(p))
                if (e.is_regular_file() && e.path().extension() == ".csv")
                    found.push_back(e.path());
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else if (fs::exists(p)) {
            out.push_back(p);
        } else {
            throw UsageError("no such file or directory: " + a);
        }
    }
    return out;
}

struct CommonInput {
    bool synthetic = false;
    std::string cases = "all";
    std::uint64_t seed = 0;
    std::size_t n = 10000;
    std::vector<std::string> data;
    std::vector<std::string> columns;
    std::string header = "auto";
    std::string missing = "drop";
};

void add_input_options(CLI::App* cmd, CommonInput& in)
{
    cmd->add_flag("--synthetic", in.synthetic, "Use the synthetic test cases");
    cmd->add_option("--cases", in.cases, "Synthetic cases: all or a list of sine,noise,sine_noise,switching");
    cmd->add_option("--seed", in.seed, "Generator seed");
    cmd->add_option("--n", in.n, "Synthetic series length");
    cmd->add_option("--data", in.data,
                    std::string("CSV files or directories (default: $") + kDataDirEnv + " when set, else synthetic)");
    cmd->add_option("--columns", in.columns, "CSV columns by name or zero-based index")->delimiter(',');
    cmd->add_option("--header", in.header, "CSV header row: auto, yes, no");
    cmd->add_option("--missing", in.missing, "Missing cells: drop (row) or error");
}

std::vector<BenchInput> load_inputs(const CommonInput& in, std::size_t* file_count = nullptr)
{
    std::vector<std::string> data = in.data;
    if (data.empty() && !in.synthetic) {
        if (const char* dir = std::getenv(kDataDirEnv); dir && *dir)
            data.push_back(dir);
    }

    std::vector<BenchInput> out;
    if (data.empty() || in.synthetic) {
        for (const auto c : parse_cases(in.cases)) {
            SynthSpec spec;
            spec.which = c;
            spec.seed = in.seed;
            spec.n = in.n;
            out.push_back({std::string(to_string(c)), {generate(spec)}});
        }
    }
    const CsvOptions opts = csv_options(in.columns, in.header, in.missing);
    const auto files = collect_inputs(data);
    if (file_count)
        *file_count = files.size();
    for (const auto& path : files) {
        Dataset ds = load_csv(path, opts);
        if (ds.dropped_rows)
            std::cerr << path.string() << ": dropped " << ds.dropped_rows << " rows with missing values\n";
        out.push_back({path.stem().string(), std::move(ds.channels)});
    }
    if (out.empty())
        throw UsageError("no inputs: pass --synthetic or --data");
    return out;
}

int run_compress(const std::string& input, const std::string& output, const std::string& transforms,
                 const std::string& coder, std::optional<int> level, std::uint16_t bins,
                 const std::vector<std::string>& columns, const std::string& header, const std::string& missing)
{
    const PipelineDescriptor pipeline{TransformChain::parse(transforms, bins), Method::parse(coder, level)};
    Dataset ds = load_csv(input, csv_options(columns, header, missing));
    if (ds.dropped_rows)
        std::cerr << input << ": dropped " << ds.dropped_rows << " rows with missing values\n";

    const Bytes packed = compress(ds.channels, pipeline);
    std::int64_t original = 0;
    for (const auto& ch : ds.channels)
        original += static_cast<std::int64_t>(ch.size()) * (fits_int16(ch.samples) ? 2 : 4);

    const std::string out = output.empty() ? fs::path(input).replace_extension(".tsc").string() : output;
    write_output(out, std::string_view(reinterpret_cast<const char*>(packed.data()), packed.size()));

    const SizeReport r = size_metrics(original, static_cast<std::int64_t>(packed.size()));
    std::cerr << "original " << r.original_bytes << " bytes, compressed " << r.compressed_bytes << " bytes, CR "
              << r.cr << ", CS " << r.cs << '\n';
    return kOk;
}

int run_decompress(const std::string& input, const std::string& output)
{
    const auto channels = decompress(read_file(input));
    std::ostringstream csv;
    write_csv(csv, channels);
    write_output(output, csv.str());
    return kOk;
}

int run_synth(const std::string& which, std::uint64_t seed, std::size_t n, const std::string& output,
              std::int32_t amplitude, std::int32_t period, std::int32_t noise)
{
    SynthSpec spec;
    spec.which = synth_case_from_name(which);
    spec.seed = seed;
    spec.n = n;
    spec.amplitude = amplitude;
    spec.period = period;
    spec.noise_half_range = noise;
    const std::vector<TimeSeries> channels{generate(spec)};
    std::ostringstream csv;
    write_csv(csv, channels);
    write_output(output, csv.str());
    return kOk;
}

int run_stats(const CommonInput& in, const std::string& transforms, std::uint16_t bins)
{
    const TransformChain chain = TransformChain::parse(transforms, bins);
    std::cout << "dataset,channel,samples,cardinality,aad,entropy_bits,shannon_cs\n";
    for (const auto& input : load_inputs(in)) {
        for (const auto& ch : input.channels) {
            const Samples t = chain_apply(ch.samples, chain).values;
            const SeriesStats s = entropy_and_limit(t);
            std::cout << input.name << ',' << ch.channel << ',' << t.size() << ',' << s.cardinality << ',' << s.aad
                      << ',' << s.entropy_bits << ',' << s.shannon_cs << '\n';
        }
    }
    return kOk;
}

int run_bench(const CommonInput& in, const std::string& chains, const std::string& coders, std::optional<int> level,
              const std::vector<int>& levels, unsigned reps, unsigned threads, const std::string& format,
              const std::string& output, std::uint16_t bins)
{
    const ReportFormat fmt = report_format_from_name(format);
    const auto methods = parse_methods(coders, level);
    const auto chain_list = parse_chains(chains, bins);
    std::size_t files = 0;
    const auto inputs = load_inputs(in, &files);

    MatrixOptions opts;
    opts.repetitions = reps;
    opts.threads = threads;
    opts.levels = levels;
    const MatrixResult res = run_matrix(inputs, chain_list, methods, opts);

    ReportMeta meta = default_report_meta();
    meta.seed = in.seed;
    meta.repetitions = reps;
    for (const auto& f : res.failures)
        std::cerr << "failed: " << f << '\n';
    for (const auto& r : res.records)
        if (r.status == "n/a")
            std::cerr << "skipped " << r.method << ": " << r.note << '\n';
    write_output(output, emit_report(res.records, fmt, meta));

    if (files > 1) {
        for (const auto& s : summarize(res.records))
            std::cerr << "mean CS " << s.method << " / " << s.chain << ": " << s.mean_cs << " (size-weighted "
                      << s.weighted_cs << ", " << s.files << " files)\n";
    }
    return res.failures.empty() ? kOk : kData;
}

int run_ablate(const CommonInput& in, const std::string& chains, const std::string& format, const std::string& output)
{
    const ReportFormat fmt = report_format_from_name(format);
    // the ablation always covers the progressive stages; --chains must name a subset
    for (const auto& c : parse_chains(chains, kDefaultQuarsBins)) {
        const std::string label = c.label();
        if (std::find(AblationRow::kLabels.begin(), AblationRow::kLabels.end(), label) == AblationRow::kLabels.end())
            throw UsageError("ablation chain '" + label + "' is not one of none, D, D+R, D+R+Q");
    }
    std::vector<AblationRow> rows;
    for (const auto& input : load_inputs(in))
        rows.push_back(ablate(input));
    write_output(output, emit_ablation(rows, fmt));
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lossless integer time-series compression and benchmarking"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string input, output, transforms = "none", coder = "huffman", format = "markdown";
    std::optional<int> level;
    std::uint16_t bins = kDefaultQuarsBins;
    std::vector<std::string> columns;
    std::string header = "auto", missing = "drop";

    auto* c = app.add_subcommand("compress", "Compress a CSV file into a container");
    c->add_option("input", input, "Input CSV")->required();
    c->add_option("-o,--output", output, "Output container (default: input with .tsc extension)");
    c->add_option("--transforms", transforms, "Transform chain, e.g. delta,rle0,quars or none");
    c->add_option("--coder", coder, "Coder or backend name");
    c->add_option("--level", level, "Backend level");
    c->add_option("--quars-bins", bins, "QuaRs bin count");
    c->add_option("--columns", columns, "CSV columns by name or zero-based index")->delimiter(',');
    c->add_option("--header", header, "CSV header row: auto, yes, no");
    c->add_option("--missing", missing, "Missing cells: drop (row) or error");

    auto* d = app.add_subcommand("decompress", "Decode a container back to CSV");
    d->add_option("input", input, "Input container")->required();
    d->add_option("-o,--output", output, "Output CSV (default: stdout)");

    std::string synth_case;
    std::uint64_t seed = 0;
    std::size_t n = 10000;
    SynthSpec defaults;
    std::int32_t amplitude = defaults.amplitude, period = defaults.period, noise = defaults.noise_half_range;
    auto* s = app.add_subcommand("synth", "Write a synthetic test case as CSV");
    s->add_option("--case", synth_case, "sine, noise, sine_noise or switching")->required();
    s->add_option("--seed", seed, "Generator seed");
    s->add_option("--n", n, "Series length");
    s->add_option("--amplitude", amplitude, "Sine amplitude");
    s->add_option("--period", period, "Sine period in samples");
    s->add_option("--noise", noise, "Noise half-range");
    s->add_option("-o,--output", output, "Output CSV (default: stdout)");

    CommonInput common;
    std::string chains = "none,d,d+r,d+r+q", coders = "all-internal";
    std::vector<int> levels;
    unsigned reps = 3, threads = 0;

    auto* b = app.add_subcommand("bench", "Run a dataset x chain x coder matrix");
    add_input_options(b, common);
    b->add_option("--chains", chains, "Chains, e.g. none,d,d+r,d+r+q");
    b->add_option("--coders", coders, "Coders/backends, or all-internal, all-backends, all");
    b->add_option("--level", level, "Backend level");
    b->add_option("--levels", levels, "Run every backend at each of these levels")->delimiter(',');
    b->add_option("--repetitions", reps, "Timing repetitions (best of)");
    b->add_option("--threads", threads, "Worker threads (0: all cores)");
    b->add_option("--quars-bins", bins, "QuaRs bin count");
    b->add_option("--format", format, "csv, markdown or json");
    b->add_option("-o,--output", output, "Report path (default: stdout)");

    auto* a = app.add_subcommand("ablate", "Cardinality/AAD/entropy before and after each transform stage");
    add_input_options(a, common);
    a->add_option("--chains", chains, "Subset of none,d,d+r,d+r+q (all four are always computed)");
    a->add_option("--format", format, "csv, markdown or json");
    a->add_option("-o,--output", output, "Report path (default: stdout)");

    auto* st = app.add_subcommand("stats", "Entropy and Shannon limit per channel");
    add_input_options(st, common);
    st->add_option("--transforms", transforms, "Transform chain applied before measuring");
    st->add_option("--quars-bins", bins, "QuaRs bin count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (c->parsed())
            return run_compress(input, output, transforms, coder, level, bins, columns, header, missing);
        if (d->parsed())
            return run_decompress(input, output);
        if (s->parsed())
            return run_synth(synth_case, seed, n, output, amplitude, period, noise);
        if (b->parsed())
            return run_bench(common, chains, coders, level, levels, reps, threads, format, output, bins);
        if (a->parsed())
            return run_ablate(common, chains, format, output);
        if (st->parsed())
            return run_stats(common, transforms, bins);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BackendUnavailable& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnavailable;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}
