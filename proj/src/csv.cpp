// SPDX-License-Identifier: Apache-2.0
//
// sbar - Bayesian channel reconstruction for fluid antenna arrays
// Copyright (C) 2026 The sbar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "sbar/error.hpp"
#include "sbar/harness.hpp"

namespace sbar {

namespace {

template <class T>
void put_number(std::string& out, T value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    out.append(buf, res.ptr);
}

template <class T>
T get_number(std::string_view field, std::size_t line, std::string_view column) {
    T value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw Error(ErrorCode::Format, "line " + std::to_string(line) + ": bad " + std::string(column) + " '" +
                                           std::string(field) + "'");
    return value;
}

} // namespace

std::string format_csv(std::span<const ResultRecord> records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : records) {
        out += r.scheme;
        out += ',';
        out += r.kernel_kind;
        out += ',';
        put_number(out, r.N);
        out += ',';
        put_number(out, r.M);
        out += ',';
        put_number(out, r.P);
        out += ',';
        put_number(out, r.snr_db);
        out += ',';
        put_number(out, r.trial);
        out += ',';
        put_number(out, r.seed);
        out += ',';
        put_number(out, r.nmse);
        out += ',';
        put_number(out, r.wall_time_stage2_ns);
        out += '\n';
    }
    return out;
}

std::vector<ResultRecord> parse_csv(const std::string& text) {
    std::vector<ResultRecord> records;
    std::size_t pos = 0, line_no = 0;
    bool header = true;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line(text.data() + pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (header) {
            if (line != kCsvHeader) throw Error(ErrorCode::Format, "unexpected CSV header");
            header = false;
            continue;
        }
        if (line.empty()) continue;

        std::vector<std::string_view> f;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            f.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (f.size() != 10)
            throw Error(ErrorCode::Format, "line " + std::to_string(line_no) + ": expected 10 fields");
        ResultRecord r;
        r.scheme = std::string(f[0]);
        r.kernel_kind = std::string(f[1]);
        r.N = get_number<std::size_t>(f[2], line_no, "N");
        r.M = get_number<std::size_t>(f[3], line_no, "M");
        r.P = get_number<std::size_t>(f[4], line_no, "P");
        r.snr_db = get_number<double>(f[5], line_no, "snr_db");
        r.trial = get_number<std::size_t>(f[6], line_no, "trial");
        r.seed = get_number<std::uint64_t>(f[7], line_no, "seed");
        r.nmse = get_number<double>(f[8], line_no, "nmse");
        r.wall_time_stage2_ns = get_number<std::int64_t>(f[9], line_no, "wall_time_stage2_ns");
        records.push_back(std::move(r));
    }
    if (header) throw Error(ErrorCode::Format, "CSV has no header");
    return records;
}

void emit_csv(std::span<const ResultRecord> records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    const std::string text = format_csv(records);
    out.write(text.data(), std::streamsize(text.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed on " + path.string());
}

} // namespace sbar
