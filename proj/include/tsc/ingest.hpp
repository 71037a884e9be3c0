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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tsc/core.hpp"

namespace tsc {

/// How a channel was mapped to 16-bit integers. For scaled channels a
/// sample q stands for values in [lo + (q + 32768)·step, lo + (q + 32769)·step)
/// with step = (hi − lo) / 65535.
struct Quantization {
    double lo = 0.0;
    double hi = 0.0;
    bool identity = false;  // integral input already within int16, passed through

    double step() const noexcept { return hi > lo ? (hi - lo) / 65535.0 : 0.0; }
};

struct QuantizedColumn {
    TimeSeries series;
    Quantization quant;
};

/// Scales to the full signed 16-bit range with floor rounding; the maximum
/// maps to 32767 and a constant column to all zeros. Throws Error listing
/// the rows of any NaN or infinite value.
QuantizedColumn quantize_column(std::span<const double> values);

// Identity when every value is an integer within int16, else quantize_column.
QuantizedColumn quantize_or_pass(std::span<const double> values);

// Lower edge of each sample's quantization cell.
std::vector<double> dequantize(std::span<const std::int32_t> q, const Quantization& quant);

enum class MissingPolicy { drop_row, error };
enum class HeaderMode { autodetect, present, absent };

struct CsvOptions {
    // Column names or zero-based indices; empty selects every column.
    std::vector<std::string> columns;
    HeaderMode header = HeaderMode::autodetect;
    MissingPolicy missing = MissingPolicy::drop_row;
};

struct Dataset {
    std::string name;
    std::vector<TimeSeries> channels;
    std::vector<Quantization> quantization;  // one per channel
    std::vector<std::string> column_names;
    std::vector<std::filesystem::path> provenance;
    std::size_t dropped_rows = 0;

    std::size_t sample_count() const noexcept;
};

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
Dataset parse_csv(std::istream& in, const std::string& name, const CsvOptions& options = {});

/// One row per sample, one column per channel, no header row. Channels
/// must have equal length.
void write_csv(std::ostream& out, std::span<const TimeSeries> channels);
void write_csv(const std::filesystem::path& path, std::span<const TimeSeries> channels);

} // namespace tsc
