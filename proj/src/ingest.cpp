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

#include "tsc/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace tsc {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Splits one CSV record; quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_record(std::string_view line)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

bool is_missing(std::string_view s)
{
    return s.empty() || s == "NaN" || s == "nan" || s == "NAN" || s == "NA" || s == "null";
}

bool parse_number(std::string_view s, double& out)
{
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string join_rows(const std::vector<std::size_t>& rows)
{
    std::string s;
    const std::size_t shown = std::min<std::size_t>(rows.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
        if (i)
            s += ", ";
        s += std::to_string(rows[i]);
    }
    if (rows.size() > shown)
        s += ", ... (" + std::to_string(rows.size()) + " total)";
    return s;
}

} // namespace

QuantizedColumn quantize_column(std::span<const double> values)
{
    if (values.empty())
        throw Error("quantize: empty column");
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            bad.push_back(i);
    }
    if (!bad.empty())
        throw Error("quantize: non-finite values at rows " + join_rows(bad));

    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    QuantizedColumn out;
    out.quant.lo = *mn;
    out.quant.hi = *mx;
    out.series.samples.resize(values.size());
    if (*mx == *mn)
        return out;

    const double range = *mx - *mn;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double q = std::floor((values[i] - *mn) * 65535.0 / range) - 32768.0;
        out.series.samples[i] = static_cast<std::int32_t>(std::clamp(q, -32768.0, 32767.0));
    }
    return out;
}

QuantizedColumn quantize_or_pass(std::span<const double> values)
{
    const bool integral = !values.empty() && std::all_of(values.begin(), values.end(), [](double v) {
        return std::isfinite(v) && v == std::floor(v) && v >= kInt16Min && v <= kInt16Max;
    });
    if (!integral)
        return quantize_column(values);

    QuantizedColumn out;
    out.quant.identity = true;
    out.series.samples.reserve(values.size());
    for (const double v : values)
        out.series.samples.push_back(static_cast<std::int32_t>(v));
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    out.quant.lo = *mn;
    out.quant.hi = *mx;
    return out;
}

std::vector<double> dequantize(std::span<const std::int32_t> q, const Quantization& quant)
{
    std::vector<double> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (quant.identity)
            out[i] = q[i];
        else
            out[i] = quant.lo + (static_cast<double>(q[i]) + 32768.0) * quant.step();
    }
    return out;
}

std::size_t Dataset::sample_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& ch : channels)
        n += ch.size();
    return n;
}

Dataset parse_csv(std::istream& in, const std::string& name, const CsvOptions& options)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (lineno == 1 && line.starts_with("\xEF\xBB\xBF"))
            line.erase(0, 3);
        if (trim(line).empty())
            continue;
        rows.push_back(split_record(line));
        line_numbers.push_back(lineno);
    }
    if (rows.empty())
        throw Error(name + ": no data rows");

    bool has_header = options.header == HeaderMode::present;
    if (options.header == HeaderMode::autodetect) {
        double tmp;
        has_header = std::any_of(rows.front().begin(), rows.front().end(),
                                 [&](const std::string& f) { return !is_missing(f) && !parse_number(f, tmp); });
    }

    const std::size_t width = rows.front().size();
    std::vector<std::string> header;
    if (has_header) {
        header = rows.front();
        rows.erase(rows.begin());
        line_numbers.erase(line_numbers.begin());
    } else {
        for (std::size_t c = 0; c < width; ++c)
            header.push_back(std::to_string(c));
    }

    std::vector<std::size_t> selected;
    if (options.columns.empty()) {
        for (std::size_t c = 0; c < width; ++c)
            selected.push_back(c);
    }
    for (const auto& want : options.columns) {
        const auto it = std::find(header.begin(), header.end(), want);
        if (it != header.end()) {
            selected.push_back(static_cast<std::size_t>(it - header.begin()));
            continue;
        }
        std::size_t idx = 0;
        const auto [ptr, ec] = std::from_chars(want.data(), want.data() + want.size(), idx);
        if (ec != std::errc{} || ptr != want.data() + want.size() || idx >= width)
            throw UsageError(name + ": no column '" + want + "'");
        selected.push_back(idx);
    }

    std::vector<std::vector<double>> columns(selected.size());
    Dataset ds;
    ds.name = name;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        std::vector<double> parsed(selected.size());
        bool drop = false;
        for (std::size_t k = 0; k < selected.size(); ++k) {
            const std::size_t c = selected[k];
            const std::string cell = c < row.size() ? row[c] : std::string();
            const auto where = [&] { return "row " + std::to_string(line_numbers[r]) + ", column '" + header[c] + "'"; };
            if (is_missing(cell)) {
                if (options.missing == MissingPolicy::error)
                    throw Error(name + ": missing value at " + where());
                drop = true;
                break;
            }
            if (!parse_number(cell, parsed[k]))
                throw Error(name + ": unparseable number '" + cell + "' at " + where());
            if (std::isnan(parsed[k])) {
                if (options.missing == MissingPolicy::error)
                    throw Error(name + ": missing value at " + where());
                drop = true;
                break;
            }
            if (std::isinf(parsed[k]))
                throw Error(name + ": non-finite value at " + where());
        }
        if (drop) {
            ++ds.dropped_rows;
            continue;
        }
        for (std::size_t k = 0; k < selected.size(); ++k)
            columns[k].push_back(parsed[k]);
    }
    if (columns.empty() || columns.front().empty())
        throw Error(name + ": no complete rows");

    for (std::size_t k = 0; k < selected.size(); ++k) {
        QuantizedColumn q = quantize_or_pass(columns[k]);
        q.series.channel = static_cast<std::uint16_t>(k);
        ds.channels.push_back(std::move(q.series));
        ds.quantization.push_back(q.quant);
        ds.column_names.push_back(header[selected[k]]);
    }
    return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    Dataset ds = parse_csv(in, path.filename().string(), options);
    ds.provenance.push_back(path);
    return ds;
}

void write_csv(std::ostream& out, std::span<const TimeSeries> channels)
{
    if (channels.empty())
        return;
    const std::size_t n = channels.front().size();
    for (const auto& ch : channels) {
        if (ch.size() != n)
            throw Error("write_csv: channels differ in length");
    }
    std::string buf;
    for (std::size_t i = 0; i < n; ++i) {
        buf.clear();
        for (std::size_t c = 0; c < channels.size(); ++c) {
            if (c)
                buf += ',';
            buf += std::to_string(channels[c].samples[i]);
        }
        buf += '\n';
        out << buf;
    }
}

void write_csv(const std::filesystem::path& path, std::span<const TimeSeries> channels)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path.string());
    write_csv(out, channels);
    if (!out)
        throw Error("write failed: " + path.string());
}

} // namespace tsc
