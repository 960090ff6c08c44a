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

// sbar: command-line front end for plan design, kernel training, online
// estimation, Monte-Carlo sweeps and plotting.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbar/error.hpp"
#include "sbar/harness.hpp"
#include "sbar/io.hpp"
#include "sbar/simd/ops.hpp"

using namespace sbar;

namespace {

struct EncodingFlag {
    std::string name; // "", "binary" or "json"

    io::FileFormat resolve(const std::string& path) const {
        if (name == "binary") return io::FileFormat::Binary;
        if (name == "json") return io::FileFormat::Json;
        return io::format_for_path(path);
    }
};

double resolve_noise(std::optional<double> noise_power, std::optional<double> snr_db, std::size_t n) {
    if (noise_power && snr_db) throw Error(ErrorCode::InvalidArgument, "give --noise-power or --snr-db, not both");
    if (noise_power) return *noise_power;
    if (snr_db) return noise_power_for_snr(double(n), *snr_db);
    throw Error(ErrorCode::InvalidArgument, "one of --noise-power or --snr-db is required");
}

SchemeSpec parse_scheme_flag(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const auto kind = parse_scheme_kind(head);
    if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + head + "'");
    SchemeSpec s;
    s.kind = *kind;
    if (colon != std::string::npos) {
        if (s.kind != SchemeKind::Sbar) throw Error(ErrorCode::InvalidArgument, "only SBAR takes a kernel suffix");
        const auto k = parse_kernel_kind(text.substr(colon + 1));
        if (!k) throw Error(ErrorCode::InvalidArgument, "unknown kernel in '" + text + "'");
        s.kernel = *k;
    }
    return s;
}

std::vector<SchemeSpec> default_schemes() {
    SchemeSpec bessel, cov, sel, omp;
    cov.kernel = KernelKind::TrainedCovariance;
    sel.kind = SchemeKind::Selmmse;
    omp.kind = SchemeKind::FasOmp;
    return {bessel, cov, sel, omp};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian channel reconstruction for fluid antenna arrays"};
    app.require_subcommand(1);
    std::string simd_name;
    app.add_option("--simd", simd_name, "Force the vector kernels: scalar, avx2 or neon");

    // train-kernel
    auto* train = app.add_subcommand("train-kernel", "Build a prior kernel and write it to a kernel file");
    std::string t_kind = "bessel", t_out;
    std::size_t t_n = 256, t_timeslots = 100, t_clusters = 9, t_rays = 100;
    double t_aperture = 10.0, t_carrier = 3.5e9, t_alpha = 1.0, t_eta = kDefaultEta, t_spread = 5.0;
    int t_order = 0;
    std::optional<double> t_jitter;
    std::uint64_t t_seed = 0x7261696e696e67ULL;
    std::vector<std::string> t_channels;
    EncodingFlag t_enc;
    train->add_option("--kind", t_kind, "exponential, bessel or covariance")->capture_default_str();
    train->add_option("--N", t_n, "Number of ports")->capture_default_str();
    train->add_option("--aperture", t_aperture, "Aperture in wavelengths")->capture_default_str();
    train->add_option("--carrier-hz", t_carrier, "Carrier frequency")->capture_default_str();
    train->add_option("--alpha", t_alpha, "Kernel amplitude")->capture_default_str();
    train->add_option("--eta", t_eta, "Kernel length scale in wavelengths")->capture_default_str();
    train->add_option("--order", t_order, "Bessel order")->capture_default_str();
    train->add_option("--jitter", t_jitter, "Diagonal jitter (default 1e-9 * trace / N)");
    train->add_option("--training-timeslots", t_timeslots, "T, number of SSC training channels")->capture_default_str();
    train->add_option("--training-seed", t_seed, "Seed of the first training channel")->capture_default_str();
    train->add_option("--clusters", t_clusters, "SSC clusters C")->capture_default_str();
    train->add_option("--rays", t_rays, "SSC rays per cluster R")->capture_default_str();
    train->add_option("--spread-deg", t_spread, "SSC angular spread")->capture_default_str();
    train->add_option("--channels", t_channels, "Train on these channel files instead of SSC draws");
    train->add_option("--encoding", t_enc.name, "binary or json (default from extension)")
        ->check(CLI::IsMember({"binary", "json"}));
    train->add_option("--out", t_out, "Kernel file")->required();

    // design
    auto* design = app.add_subcommand("design", "Design a sampling plan from a kernel file");
    std::string d_kernel, d_out;
    std::size_t d_p = 10, d_m = 4;
    std::optional<double> d_noise, d_snr;
    EncodingFlag d_enc;
    design->add_option("--kernel", d_kernel, "Kernel file")->required()->check(CLI::ExistingFile);
    design->add_option("--P", d_p, "Pilot timeslots")->capture_default_str();
    design->add_option("--M", d_m, "Antennas per timeslot")->capture_default_str();
    design->add_option("--noise-power", d_noise, "sigma^2");
    design->add_option("--snr-db", d_snr, "SNR; sigma^2 = N / 10^(snr/10)");
    design->add_option("--encoding", d_enc.name, "binary or json (default from extension)")
        ->check(CLI::IsMember({"binary", "json"}));
    design->add_option("--out", d_out, "Plan file")->required();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Draw an SSC channel and take the plan's pilots");
    std::string s_plan, s_obs, s_channel;
    std::uint64_t s_seed = 0;
    double s_aperture = 10.0, s_carrier = 3.5e9;
    simulate->add_option("--plan", s_plan, "Plan file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--seed", s_seed, "Channel and noise seed")->required();
    simulate->add_option("--aperture", s_aperture, "Aperture in wavelengths")->capture_default_str();
    simulate->add_option("--carrier-hz", s_carrier, "Carrier frequency")->capture_default_str();
    simulate->add_option("--observation", s_obs, "Observation file to write")->required();
    simulate->add_option("--channel", s_channel, "Also write the true channel");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Reconstruct all ports from a plan and an observation");
    std::string e_plan, e_obs, e_out, e_truth;
    estimate->add_option("--plan", e_plan, "Plan file")->required()->check(CLI::ExistingFile);
    estimate->add_option("--observation", e_obs, "Observation file")->required()->check(CLI::ExistingFile);
    estimate->add_option("--out", e_out, "Estimate file")->required();
    estimate->add_option("--truth", e_truth, "Channel file; prints the NMSE")->check(CLI::ExistingFile);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a Monte-Carlo sweep and write the CSV");
    std::string w_config, w_out, w_dump;
    std::uint64_t w_seed = 0;
    std::optional<std::size_t> w_n, w_m, w_trials, w_threads;
    std::vector<std::size_t> w_p;
    std::vector<double> w_snr;
    std::vector<std::string> w_schemes;
    bool w_timing = false, w_no_cache = false;
    sweep->add_option("--config", w_config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    sweep->add_option("--seed", w_seed, "Base seed")->required();
    sweep->add_option("--N", w_n, "Number of ports");
    sweep->add_option("--M", w_m, "Antennas per timeslot");
    sweep->add_option("--P", w_p, "Pilot timeslot counts");
    sweep->add_option("--snr-db", w_snr, "SNR values");
    sweep->add_option("--trials", w_trials, "Trials per point");
    sweep->add_option("--threads", w_threads, "Worker threads (0 = all cores)");
    sweep->add_option("--scheme", w_schemes, "SBAR[:kernel], SELMMSE or FAS_OMP; repeatable");
    sweep->add_flag("--timing", w_timing, "Record stage-2 wall time");
    sweep->add_flag("--no-plan-cache", w_no_cache, "Redesign the plan in every trial");
    sweep->add_option("--out", w_out, "CSV output (overrides the config)");
    sweep->add_option("--dump-config", w_dump, "Write the effective config here");

    // plot
    auto* plot = app.add_subcommand("plot", "Render mean NMSE versus P from a sweep CSV");
    std::string p_csv, p_out, p_title;
    plot->add_option("--csv", p_csv, "Sweep CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--out", p_out, "SVG file")->required();
    plot->add_option("--title", p_title, "Plot title");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!simd_name.empty()) {
            const auto isa = simd::parse_isa(simd_name);
            if (!isa || !simd::set_active_isa(*isa))
                throw Error(ErrorCode::InvalidArgument, "vector ISA '" + simd_name + "' is not available");
        }

        if (*train) {
            const auto kind = parse_kernel_kind(t_kind);
            if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown kernel kind '" + t_kind + "'");
            std::optional<Kernel> kernel;
            if (*kind == KernelKind::TrainedCovariance) {
                if (!t_channels.empty()) {
                    std::vector<ChannelRealization> training;
                    for (const auto& f : t_channels) training.push_back(io::load_channel(f));
                    kernel = kernel_covariance(training, t_jitter, t_carrier);
                } else {
                    ExperimentConfig c;
                    c.num_ports = t_n;
                    c.aperture_in_wavelengths = t_aperture;
                    c.carrier_hz = t_carrier;
                    c.channel = SscModelParams{t_clusters, t_rays, t_spread, 0};
                    c.channel.validate();
                    c.training_seed = t_seed;
                    c.jitter = t_jitter;
                    kernel = train_covariance_kernel(c, t_timeslots);
                }
            } else {
                const PortGeometry g = build_port_geometry(t_n, t_aperture, t_carrier);
                kernel = *kind == KernelKind::Bessel ? kernel_bessel(g, t_alpha, t_eta, t_order, t_jitter)
                                                     : kernel_exponential(g, t_alpha, t_eta, t_jitter);
            }
            io::save_kernel(*kernel, t_out, t_enc.resolve(t_out));
            const KernelReport r = validate_kernel(*kernel);
            std::printf("kernel %s N=%zu jitter=%.3g fingerprint=%016llx min_eig=%.3g psd=%s\n",
                        std::string(to_string(kernel->kind())).c_str(), kernel->size(), kernel->hyperparams().jitter,
                        static_cast<unsigned long long>(kernel->fingerprint()), r.min_eigenvalue,
                        r.positive_semidefinite ? "yes" : "no");
        } else if (*design) {
            const Kernel kernel = io::load_kernel(d_kernel);
            const double noise = resolve_noise(d_noise, d_snr, kernel.size());
            const SamplingPlan plan = design_plan(kernel, d_p, d_m, noise);
            io::save_plan(plan, d_out, d_enc.resolve(d_out));
            std::printf("plan id=%016llx N=%zu P=%zu M=%zu sigma2=%.6g ports(1-based):",
                        static_cast<unsigned long long>(plan.id()), plan.num_ports(), plan.num_timeslots(),
                        plan.antennas_per_slot(), plan.noise_power());
            for (PortIndex k : plan.order()) std::printf(" %zu", k + 1);
            std::printf("\n");
        } else if (*simulate) {
            const SamplingPlan plan = io::load_plan(s_plan);
            const PortGeometry g = build_port_geometry(plan.num_ports(), s_aperture, s_carrier);
            SscModelParams params;
            params.rng_seed = s_seed;
            const ChannelRealization h = generate_ssc_channel(g, params);
            io::save_observation(observe_pilots(h, plan, plan.noise_power(), noise_seed(s_seed)), s_obs);
            if (!s_channel.empty()) io::save_channel(h, s_channel);
        } else if (*estimate) {
            const SamplingPlan plan = io::load_plan(e_plan);
            const Reconstruction r = reconstruct(plan, io::load_observation(e_obs));
            io::save_reconstruction(r, e_out);
            if (!e_truth.empty()) std::printf("nmse %.17g\n", nmse(io::load_channel(e_truth).values, r.estimate));
        } else if (*sweep) {
            ExperimentConfig c = w_config.empty() ? ExperimentConfig{} : load_config(w_config);
            c.base_seed = w_seed;
            if (w_n) c.num_ports = *w_n;
            if (w_m) c.antennas_per_slot = *w_m;
            if (!w_p.empty()) c.timeslots = w_p;
            if (!w_snr.empty()) c.snr_db = w_snr;
            if (w_trials) c.trials = *w_trials;
            if (w_threads) c.threads = *w_threads;
            if (w_timing) c.record_timing = true;
            if (w_no_cache) c.cache_plans = false;
            if (!w_schemes.empty()) {
                c.schemes.clear();
                for (const auto& s : w_schemes) c.schemes.push_back(parse_scheme_flag(s));
            }
            if (c.schemes.empty()) c.schemes = default_schemes();
            if (!w_out.empty()) c.output_path = w_out;
            if (c.output_path.empty()) throw Error(ErrorCode::InvalidConfig, "no output path (--out or config)");
            if (!w_dump.empty()) io::write_file(w_dump, config_to_json_text(c));
            const auto records = run_sweep(c);
            emit_csv(records, c.output_path);
            for (const auto& s : summarize(records))
                for (const auto& pt : s.points)
                    std::printf("%-28s P=%-3zu nmse=%.4e +- %.1e\n", s.label.c_str(), pt.P, pt.mean_nmse,
                                pt.std_error);
        } else if (*plot) {
            SvgOptions opts;
            if (!p_title.empty()) opts.title = p_title;
            emit_svg(parse_csv(io::read_file(p_csv)), p_out, opts);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "sbar: %s\n", e.what());
        return 1;
    }
    return 0;
}
