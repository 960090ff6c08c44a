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
#include <filesystem>
#include <regex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "sbar/harness.hpp"
#include "sbar/io.hpp"
#include "sbar/simd/ops.hpp"
#include "support.hpp"

using namespace sbar;

namespace {

SchemeSpec sbar_scheme(KernelKind kind) {
    SchemeSpec s;
    s.kind = SchemeKind::Sbar;
    s.kernel = kind;
    return s;
}

SchemeSpec plain(SchemeKind kind) {
    SchemeSpec s;
    s.kind = kind;
    return s;
}

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.num_ports = 32;
    c.antennas_per_slot = 2;
    c.timeslots = {1, 3};
    c.snr_db = {10.0, 20.0};
    c.trials = 6;
    c.base_seed = 99;
    c.training_timeslots = 20;
    c.schemes = {sbar_scheme(KernelKind::Bessel), sbar_scheme(KernelKind::TrainedCovariance),
                 plain(SchemeKind::Selmmse), plain(SchemeKind::FasOmp)};
    return c;
}

std::vector<std::vector<std::pair<double, double>>> polylines(const std::string& svg) {
    std::vector<std::vector<std::pair<double, double>>> out;
    const std::regex line_re(R"re(<polyline class="series"[^>]*points="([^"]*)")re");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), line_re); it != std::sregex_iterator(); ++it) {
        std::vector<std::pair<double, double>> pts;
        std::istringstream ss((*it)[1].str());
        std::string tok;
        while (ss >> tok) {
            const auto comma = tok.find(',');
            pts.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
        }
        out.push_back(pts);
    }
    return out;
}

} // namespace

TEST_CASE("nmse examples") {
    CVector h(3);
    h << Complex(1, 2), Complex(-0.5, 0), Complex(0, 3);
    CHECK(nmse(h, h) == 0.0);
    CHECK(nmse(h, CVector::Zero(3)) == 1.0);
    CHECK(nmse(h, CVector(2.0 * h)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_SBAR_ERROR(nmse(CVector::Zero(3), h), ErrorCode::ZeroNormTruth);
    CHECK_SBAR_ERROR(nmse(h, CVector::Zero(2)), ErrorCode::DimensionMismatch);
}

TEST_CASE("config validation") {
    ExperimentConfig c = small_config();
    CHECK_NOTHROW(c.validate());
    c.trials = 0;
    CHECK_SBAR_ERROR(c.validate(), ErrorCode::InvalidConfig);
    c = small_config();
    c.timeslots = {17};
    CHECK_SBAR_ERROR(c.validate(), ErrorCode::InvalidConfig);
    c = small_config();
    c.schemes.clear();
    CHECK_SBAR_ERROR(c.validate(), ErrorCode::InvalidConfig);
    c = small_config();
    c.channel.num_clusters = 0;
    CHECK_SBAR_ERROR(c.validate(), ErrorCode::InvalidConfig);
}

TEST_CASE("training seeds that collide with evaluation seeds are rejected") {
    ExperimentConfig c = small_config();
    c.training_seed = trial_seed(c.base_seed, 3, 20.0, 4) - 7;
    CHECK_SBAR_ERROR(c.validate(), ErrorCode::InvalidConfig);
    c.schemes = {sbar_scheme(KernelKind::Bessel)};
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("trained covariance kernel rank follows the training count") {
    ExperimentConfig c;
    c.num_ports = 256;
    c.jitter = 0.0;
    for (std::size_t t : {std::size_t(1), std::size_t(100)}) {
        const Kernel k = train_covariance_kernel(c, t);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(k.matrix(), Eigen::EigenvaluesOnly);
        const RVector ev = es.eigenvalues().reverse();
        const double tol = 1e-10 * ev[0];
        const auto rank = std::count_if(ev.begin(), ev.end(), [&](double v) { return v > tol; });
        CAPTURE(t);
        CHECK(std::size_t(rank) <= t);
        if (t == 1) CHECK(rank == 1);
    }
    CHECK_SBAR_ERROR(train_covariance_kernel(c, 0), ErrorCode::EmptyTrainingSet);
}

TEST_CASE("one noiseless trial with every port measured is exact") {
    ExperimentConfig c;
    c.num_ports = 16;
    c.antennas_per_slot = 4;
    c.timeslots = {4};
    c.snr_db = {300.0};
    c.trials = 1;
    c.schemes = {sbar_scheme(KernelKind::Bessel)};
    const auto records = run_sweep(c);
    REQUIRE(records.size() == 1);
    CHECK(records[0].nmse < 1e-8);
    CHECK(records[0].scheme == "SBAR");
    CHECK(records[0].kernel_kind == "bessel");
}

TEST_CASE("sweeps are deterministic across threads and plan caching") {
    ExperimentConfig c = small_config();
    c.threads = 1;
    const auto base = run_sweep(c);
    CHECK(base.size() == 4 * 2 * 2 * 6);
    CHECK(run_sweep(c) == base);
    c.threads = 3;
    CHECK(run_sweep(c) == base);
    c.cache_plans = false;
    CHECK(run_sweep(c) == base);
}

TEST_CASE("records come back in scheme, P, SNR, trial order") {
    const ExperimentConfig c = small_config();
    const auto r = run_sweep(c);
    std::size_t i = 0;
    for (const auto& s : c.schemes)
        for (std::size_t p : c.timeslots)
            for (double snr : c.snr_db)
                for (std::size_t t = 0; t < c.trials; ++t, ++i) {
                    CHECK(r[i].scheme == to_string(s.kind));
                    CHECK(r[i].P == p);
                    CHECK(r[i].snr_db == snr);
                    CHECK(r[i].trial == t);
                    CHECK(r[i].seed == trial_seed(c.base_seed, p, snr, t));
                    CHECK(r[i].nmse >= 0.0);
                    CHECK(r[i].wall_time_stage2_ns == 0);
                }
}

TEST_CASE("schemes within a trial share the channel") {
    ExperimentConfig c = small_config();
    c.timeslots = {16};
    c.snr_db = {300.0};
    c.trials = 3;
    c.schemes = {plain(SchemeKind::Selmmse), sbar_scheme(KernelKind::Bessel)};
    const auto r = run_sweep(c);
    for (std::size_t t = 0; t < 3; ++t) {
        CHECK(r[t].seed == r[3 + t].seed);
        CHECK(r[t].nmse < 1e-8);
        CHECK(r[3 + t].nmse < 1e-8);
    }
}

TEST_CASE("S-BAR beats SeLMMSE at every P on a 64-port array") {
    ExperimentConfig c;
    c.num_ports = 64;
    c.antennas_per_slot = 4;
    c.timeslots = {1, 2, 3, 4, 5, 6, 7, 8};
    c.snr_db = {20.0};
    c.trials = 200;
    c.base_seed = 64;
    c.schemes = {sbar_scheme(KernelKind::Bessel), plain(SchemeKind::Selmmse)};
    const auto series = summarize(run_sweep(c));
    REQUIRE(series.size() == 2);
    for (std::size_t i = 0; i < 8; ++i) {
        CAPTURE(series[0].points[i].P);
        CHECK(series[0].points[i].mean_nmse < series[1].points[i].mean_nmse);
    }
}

TEST_CASE("CSV format") {
    ResultRecord r{"SBAR", "bessel", 256, 4, 10, 20.0, 3, 18446744073709551615ULL, 0.125, 0};
    const std::vector<ResultRecord> one{r};
    const std::string text = format_csv(one);
    CHECK(text == "scheme,kernel_kind,N,M,P,snr_db,trial,seed,nmse,wall_time_stage2_ns\n"
                  "SBAR,bessel,256,4,10,20,3,18446744073709551615,0.125,0\n");
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(parse_csv(text) == one);
    CHECK_SBAR_ERROR(parse_csv("scheme,nmse\n"), ErrorCode::Format);
    CHECK_SBAR_ERROR(parse_csv(std::string(kCsvHeader) + "\nSBAR,bessel,1\n"), ErrorCode::Format);
}

TEST_CASE("CSV round-trips sweep output exactly") {
    const auto records = run_sweep(small_config());
    CHECK(parse_csv(format_csv(records)) == records);
    const auto path = std::filesystem::temp_directory_path() / "sbar_roundtrip.csv";
    emit_csv(records, path);
    CHECK(io::read_file(path) == format_csv(records));
    CHECK(parse_csv(io::read_file(path)) == records);
}

TEST_CASE("summaries average over trials") {
    std::vector<ResultRecord> r;
    for (std::size_t t = 0; t < 4; ++t) r.push_back({"SELMMSE", "none", 8, 1, 2, 20.0, t, t, double(t + 1), 0});
    const auto s = summarize(r);
    REQUIRE(s.size() == 1);
    REQUIRE(s[0].points.size() == 1);
    CHECK(s[0].points[0].mean_nmse == doctest::Approx(2.5));
    CHECK(s[0].points[0].std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(s[0].points[0].count == 4);
    CHECK(s[0].label == "SELMMSE");
}

TEST_CASE("SVG plot has a log axis and a trending S-BAR series") {
    ExperimentConfig c;
    c.num_ports = 64;
    c.antennas_per_slot = 4;
    c.timeslots = {2, 4, 6, 8, 10, 12};
    c.trials = 100;
    c.schemes = {sbar_scheme(KernelKind::TrainedCovariance), plain(SchemeKind::Selmmse)};
    const auto records = run_sweep(c);
    const std::string svg = render_svg(records);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("data-y-scale=\"log10\"") != std::string::npos);
    CHECK(svg.find("SBAR/covariance") != std::string::npos);
    CHECK(svg.find("SELMMSE") != std::string::npos);
    const auto lines = polylines(svg);
    REQUIRE(lines.size() == 2);
    const auto& sbar_pts = lines[0];
    REQUIRE(sbar_pts.size() == 6);
    for (std::size_t i = 1; i < sbar_pts.size(); ++i) {
        CHECK(sbar_pts[i].first > sbar_pts[i - 1].first);
        CHECK(sbar_pts[i].second > sbar_pts[i - 1].second); // SVG y grows downward
    }
    // 0.1 sits halfway between 1 and 0.01 on a log axis.
    const std::vector<ResultRecord> decades{{"A", "none", 8, 1, 1, 0.0, 0, 0, 1.0, 0},
                                            {"A", "none", 8, 1, 2, 0.0, 0, 0, 0.1, 0},
                                            {"A", "none", 8, 1, 3, 0.0, 0, 0, 0.01, 0}};
    const auto pts = polylines(render_svg(decades))[0];
    CHECK(pts[1].second - pts[0].second == doctest::Approx(pts[2].second - pts[1].second));
    CHECK(pts[1].second - pts[0].second > 0.0);
    CHECK_SBAR_ERROR(render_svg(std::vector<ResultRecord>{}), ErrorCode::EmptyRecordSet);
}

TEST_CASE("config JSON round trip and strictness") {
    ExperimentConfig c = small_config();
    c.jitter = 1e-6;
    c.output_path = "out.csv";
    c.schemes[0].eta = 0.5;
    c.schemes[3].omp.max_atoms = 4;
    const ExperimentConfig back = config_from_json_text(config_to_json_text(c));
    CHECK(config_to_json_text(back) == config_to_json_text(c));
    CHECK(back.schemes.size() == 4);
    CHECK(back.schemes[0].eta == 0.5);
    CHECK(back.schemes[3].omp.max_atoms == 4);
    CHECK(back.jitter == 1e-6);
    CHECK(back.timeslots == c.timeslots);

    const ExperimentConfig defaults = config_from_json_text(R"({"schemes": [{"scheme": "SBAR"}]})");
    CHECK(defaults.num_ports == 256);
    CHECK(defaults.trials == 500);
    CHECK(defaults.schemes[0].kernel == KernelKind::Bessel);

    CHECK_SBAR_ERROR(config_from_json_text(R"({"N": 64, "colour": 1})"), ErrorCode::InvalidConfig);
    CHECK_SBAR_ERROR(config_from_json_text(R"({"version": 2})"), ErrorCode::InvalidConfig);
    CHECK_SBAR_ERROR(config_from_json_text(R"({"N": "many"})"), ErrorCode::InvalidConfig);
    CHECK_SBAR_ERROR(config_from_json_text(R"({"schemes": [{"scheme": "LS"}]})"), ErrorCode::InvalidConfig);
    CHECK_SBAR_ERROR(config_from_json_text("[1, 2"), ErrorCode::InvalidConfig);
}

TEST_CASE("sweep results agree across vector ISAs") {
    const simd::Isa original = simd::active_isa();
    ExperimentConfig c = small_config();
    REQUIRE(simd::set_active_isa(simd::Isa::Scalar));
    const auto ref = run_sweep(c);
    for (simd::Isa isa : simd::supported_isas()) {
        CAPTURE(simd::to_string(isa));
        REQUIRE(simd::set_active_isa(isa));
        const auto got = run_sweep(c);
        REQUIRE(got.size() == ref.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].seed == ref[i].seed);
            CAPTURE(got[i].scheme); CAPTURE(got[i].kernel_kind); CAPTURE(got[i].P);
            CHECK(got[i].nmse == doctest::Approx(ref[i].nmse).epsilon(1e-9));
        }
    }
    simd::set_active_isa(original);
}
