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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "sbar/error.hpp"
#include "sbar/harness.hpp"

namespace sbar {

namespace {

constexpr double kFloorNmse = 1e-16;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

} // namespace

std::string render_svg(std::span<const ResultRecord> records, const SvgOptions& options) {
    if (records.empty()) throw Error(ErrorCode::EmptyRecordSet, "nothing to plot");
    const std::vector<Series> series = summarize(records);

    double p_min = 1e300, p_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const auto& s : series)
        for (const auto& pt : s.points) {
            p_min = std::min(p_min, double(pt.P));
            p_max = std::max(p_max, double(pt.P));
            const double ly = std::log10(std::max(pt.mean_nmse, kFloorNmse));
            y_min = std::min(y_min, ly);
            y_max = std::max(y_max, ly);
        }
    double dec_lo = std::floor(y_min), dec_hi = std::ceil(y_max);
    if (dec_hi <= dec_lo) dec_hi = dec_lo + 1.0;
    if (p_max <= p_min) {
        p_min -= 0.5;
        p_max += 0.5;
    }

    const double W = options.width, H = options.height;
    const double left = 70, right = 190, top = 40, bottom = 50;
    const double pw = W - left - right, ph = H - top - bottom;
    auto xs = [&](double p) { return left + (p - p_min) / (p_max - p_min) * pw; };
    auto ys = [&](double nmse) {
        const double ly = std::log10(std::max(nmse, kFloorNmse));
        return top + (dec_hi - ly) / (dec_hi - dec_lo) * ph;
    };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%g", W) + "\" height=\"" + fmt("%g", H) +
           "\" viewBox=\"0 0 " + fmt("%g", W) + " " + fmt("%g", H) + "\" data-y-scale=\"log10\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt("%g", W) + "\" height=\"" + fmt("%g", H) + "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", W / 2) + "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" + escape_xml(options.title) + "</text>\n";

    // Axes and grid.
    svg += "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
    svg += "<rect x=\"" + fmt("%.2f", left) + "\" y=\"" + fmt("%.2f", top) + "\" width=\"" + fmt("%.2f", pw) +
           "\" height=\"" + fmt("%.2f", ph) + "\"/>\n</g>\n";
    svg += "<g class=\"y-ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (double d = dec_lo; d <= dec_hi + 0.5; d += 1.0) {
        const double y = top + (dec_hi - d) / (dec_hi - dec_lo) * ph;
        svg += "<line x1=\"" + fmt("%.2f", left) + "\" x2=\"" + fmt("%.2f", left + pw) + "\" y1=\"" + fmt("%.2f", y) +
               "\" y2=\"" + fmt("%.2f", y) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", left - 6) + "\" y=\"" + fmt("%.2f", y + 4) +
               "\" text-anchor=\"end\" data-log10=\"" + fmt("%g", d) + "\">1e" + fmt("%g", d) + "</text>\n";
    }
    svg += "</g>\n<g class=\"x-ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    std::vector<std::size_t> ps;
    for (const auto& s : series)
        for (const auto& pt : s.points) ps.push_back(pt.P);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (std::size_t p : ps) {
        const double x = xs(double(p));
        svg += "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", top + ph + 16) +
               "\" text-anchor=\"middle\">" + std::to_string(p) + "</text>\n";
    }
    svg += "</g>\n";
    svg += "<text x=\"" + fmt("%.2f", left + pw / 2) + "\" y=\"" + fmt("%.2f", H - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">P (pilot timeslots)</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt("%.2f", top + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 16 " + fmt("%.2f", top + ph / 2) + ")\">NMSE (log scale)</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kPalette[i % std::size(kPalette)];
        std::string pts;
        for (const auto& pt : s.points) {
            if (!pts.empty()) pts += ' ';
            pts += fmt("%.3f", xs(double(pt.P))) + "," + fmt("%.3f", ys(pt.mean_nmse));
        }
        svg += "<polyline class=\"series\" data-series=\"" + escape_xml(s.label) + "\" fill=\"none\" stroke=\"" +
               color + "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
        for (const auto& pt : s.points)
            svg += "<circle cx=\"" + fmt("%.3f", xs(double(pt.P))) + "\" cy=\"" + fmt("%.3f", ys(pt.mean_nmse)) +
                   "\" r=\"3\" fill=\"" + color + "\" data-p=\"" + std::to_string(pt.P) + "\" data-nmse=\"" +
                   fmt("%.17g", pt.mean_nmse) + "\"/>\n";

        const double ly = top + 14 + 18 * double(i);
        const double lx = left + pw + 14;
        svg += "<g class=\"legend\"><line x1=\"" + fmt("%.2f", lx) + "\" x2=\"" + fmt("%.2f", lx + 22) + "\" y1=\"" +
               fmt("%.2f", ly) + "\" y2=\"" + fmt("%.2f", ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/><text x=\"" + fmt("%.2f", lx + 28) + "\" y=\"" + fmt("%.2f", ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(s.label) + "</text></g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_svg(std::span<const ResultRecord> records, const std::filesystem::path& path, const SvgOptions& options) {
    const std::string text = render_svg(records, options);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out.write(text.data(), std::streamsize(text.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed on " + path.string());
}

} // namespace sbar
