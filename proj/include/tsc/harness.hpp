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

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsc/container.hpp"
#include "tsc/core.hpp"

namespace tsc {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct BenchInput {
    std::string name;
    std::vector<TimeSeries> channels;
};

struct BenchRecord {
    std::string dataset;
    std::string chain;   // "none", "D+R+Q"
    std::string method;  // coder or backend name
    std::optional<int> level;

    std::int64_t original_bytes = 0;
    std::int64_t compressed_bytes = 0;  // everything needed to decode
    std::int64_t payload_bytes = 0;     // coded body only, without any header
    std::int64_t header_bytes = 0;      // compressed_bytes - payload_bytes
    double cr = 0.0;
    double cs = 0.0;
    double payload_cs = 0.0;

    double compress_seconds = 0.0;
    double decompress_seconds = 0.0;
    double speed_mb_s = 0.0;
    double decompress_speed_mb_s = 0.0;
    unsigned repetitions = 0;
    double timer_resolution = 0.0;

    bool roundtrip_ok = false;
    std::string status;  // "ok" or "n/a"
    std::string note;

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct RunOptions {
    unsigned repetitions = 3;
    // Applied to the container bytes before decompression (fault injection).
    std::function<void(Bytes&)> tamper;
};

/// Compresses, decompresses and verifies. Timing is the best of
/// `repetitions` wall-clock runs around compress and decompress only.
/// Throws Error on any round-trip failure; an unavailable backend yields a
/// record with status "n/a".
BenchRecord run_job(const BenchInput& input, const PipelineDescriptor& pipeline, const RunOptions& options = {});

/// Series statistics before and after progressively applying delta, zero-run
/// RLE and QuaRs, pooled over all channels.
struct AblationRow {
    std::string dataset;
    std::array<SeriesStats, 4> stages;  // none, D, D+R, D+R+Q

    static constexpr std::array<std::string_view, 4> kLabels = {"none", "D", "D+R", "D+R+Q"};
};

AblationRow ablate(const BenchInput& input);

struct MatrixOptions {
    unsigned repetitions = 3;
    unsigned threads = 0;  // 0: hardware concurrency
    // Non-empty: every backend method runs once per level in this list.
    std::vector<int> levels;
};

struct MatrixResult {
    std::vector<BenchRecord> records;  // dataset-major, then chain, then method
    std::vector<AblationRow> ablations;
    std::vector<std::string> failures;
};

/// Runs the full cross product. Job failures are collected in `failures`
/// and the remaining jobs still run. Throws UsageError on an empty axis.
MatrixResult run_matrix(const std::vector<BenchInput>& datasets, const std::vector<TransformChain>& chains,
                        const std::vector<Method>& methods, const MatrixOptions& options = {});

// Per (method, chain): unweighted and original-size-weighted mean CS.
struct ScoreSummary {
    std::string method;
    std::string chain;
    std::size_t files = 0;
    double mean_cs = 0.0;
    double weighted_cs = 0.0;
};

std::vector<ScoreSummary> summarize(const std::vector<BenchRecord>& records);

enum class ReportFormat { csv, markdown, json };

// Accepts "csv", "markdown"/"md", "json"/"json-plotdata".
ReportFormat report_format_from_name(std::string_view name);

struct ReportMeta {
    std::string tool_version{kToolVersion};
    std::optional<std::uint64_t> seed;
    unsigned repetitions = 3;
    std::map<std::string, std::string> backends;  // name -> status
};

ReportMeta default_report_meta();

/// Only records with roundtrip_ok enter a report. CS keeps its sign in csv
/// and json; markdown shows negative values as 0.
std::string emit_report(const std::vector<BenchRecord>& records, ReportFormat format, const ReportMeta& meta);
std::string emit_ablation(const std::vector<AblationRow>& rows, ReportFormat format);

struct PlotData {
    ReportMeta meta;
    std::vector<BenchRecord> records;
};

PlotData parse_plotdata(std::string_view json);

} // namespace tsc
