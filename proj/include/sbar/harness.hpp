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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbar/baselines.hpp"
#include "sbar/channel.hpp"
#include "sbar/kernels.hpp"
#include "sbar/plan.hpp"

namespace sbar {

enum class SchemeKind { Sbar, Selmmse, FasOmp };

std::string_view to_string(SchemeKind kind);
std::optional<SchemeKind> parse_scheme_kind(std::string_view name);

struct SchemeSpec {
    SchemeKind kind = SchemeKind::Sbar;
    // S-BAR only. alpha/eta/order are ignored for the trained covariance kernel.
    KernelKind kernel = KernelKind::Bessel;
    double alpha = 1.0;
    double eta = kDefaultEta;
    int order = 0;
    // FAS-OMP only.
    OmpOptions omp{};

    std::string kernel_label() const; // "bessel", ..., or "none" for baselines
};

struct ExperimentConfig {
    std::size_t num_ports = 256;
    std::size_t antennas_per_slot = 4;
    std::vector<std::size_t> timeslots{10};
    std::vector<double> snr_db{20.0};
    std::size_t trials = 500;
    double carrier_hz = 3.5e9;
    double aperture_in_wavelengths = 10.0;
    SscModelParams channel{};
    std::vector<SchemeSpec> schemes;
    std::uint64_t base_seed = 0;
    // Training channels for the covariance kernel use seeds training_seed + t, t < training_timeslots.
    std::size_t training_timeslots = 100;
    std::uint64_t training_seed = 0x7261696e696e67ULL;
    std::optional<double> jitter; // default rule when unset
    std::size_t dictionary_oversampling = 4;
    bool cache_plans = true;
    // wall_time_stage2_ns is 0 unless set.
    bool record_timing = false;
    std::size_t threads = 0; // 0 = hardware concurrency
    std::filesystem::path output_path;

    void validate() const;
};

struct ResultRecord {
    std::string scheme;
    std::string kernel_kind;
    std::size_t N = 0;
    std::size_t M = 0;
    std::size_t P = 0;
    double snr_db = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double nmse = 0.0;
    std::int64_t wall_time_stage2_ns = 0;

    bool operator==(const ResultRecord&) const = default;
};

// ||h - h_hat||^2 / ||h||^2 for one trial.
double nmse(const ChannelRealization& truth, const ChannelRealization& estimate);
double nmse(const CVector& truth, const CVector& estimate);

// Seed of trial `trial` at (P, snr): base_seed xor a mix of the three coordinates.
// The channel of that trial is generated from this seed directly.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t timeslots, double snr_db, std::size_t trial);
std::uint64_t noise_seed(std::uint64_t trial_seed);
std::uint64_t port_draw_seed(std::uint64_t trial_seed);

// Expected ||h||^2 of the channel model (N under the unit per-port normalization).
double ensemble_power(const ExperimentConfig& config);

PortGeometry geometry_for(const ExperimentConfig& config);

// Draws `timeslots` SSC channels with seeds training_seed + t and averages their outer products.
Kernel train_covariance_kernel(const ExperimentConfig& config, std::size_t timeslots);

// Builds the prior for one S-BAR scheme.
Kernel build_scheme_kernel(const ExperimentConfig& config, const SchemeSpec& scheme);

struct PlanKey {
    std::uint64_t kernel_fingerprint;
    std::size_t timeslots;
    std::size_t antennas;
    double noise_power;
    auto operator<=>(const PlanKey&) const = default;
};

struct SweepHooks {
    // Called once per distinct designed plan (or once per trial with caching off).
    std::function<void(const PlanKey&, const SamplingPlan&)> on_plan;
    // Called after every greedy step of every plan design.
    std::function<void(const PlanKey&, const PosteriorState&)> on_design_step;
};

// Records come back ordered by (scheme, P, snr, trial) whatever the thread count.
std::vector<ResultRecord> run_sweep(const ExperimentConfig& config, const SweepHooks& hooks = {});

struct SeriesPoint {
    std::size_t P;
    double mean_nmse;
    double std_error;
    std::size_t count;
};

struct Series {
    std::string label; // scheme[/kernel][ @ snr dB]
    std::string scheme;
    std::string kernel_kind;
    double snr_db;
    std::vector<SeriesPoint> points; // ascending P
};

// Groups by (scheme, kernel, snr) in first-appearance order and averages NMSE over trials.
std::vector<Series> summarize(std::span<const ResultRecord> records);

inline constexpr std::string_view kCsvHeader =
    "scheme,kernel_kind,N,M,P,snr_db,trial,seed,nmse,wall_time_stage2_ns";

std::string format_csv(std::span<const ResultRecord> records);
std::vector<ResultRecord> parse_csv(const std::string& text);
void emit_csv(std::span<const ResultRecord> records, const std::filesystem::path& path);

struct SvgOptions {
    double width = 720.0;
    double height = 480.0;
    std::string title = "NMSE versus number of pilot timeslots";
};

std::string render_svg(std::span<const ResultRecord> records, const SvgOptions& options = {});
void emit_svg(std::span<const ResultRecord> records, const std::filesystem::path& path,
              const SvgOptions& options = {});

// Versioned JSON experiment description; see README for the schema.
ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

} // namespace sbar
