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

#include "sbar/harness.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "sbar/error.hpp"
#include "sbar/pilots.hpp"
#include "sbar/rng.hpp"

namespace sbar {

std::string_view to_string(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::Sbar: return "SBAR";
    case SchemeKind::Selmmse: return "SELMMSE";
    case SchemeKind::FasOmp: return "FAS_OMP";
    }
    return "unknown";
}

std::optional<SchemeKind> parse_scheme_kind(std::string_view name) {
    if (name == "SBAR" || name == "sbar") return SchemeKind::Sbar;
    if (name == "SELMMSE" || name == "selmmse") return SchemeKind::Selmmse;
    if (name == "FAS_OMP" || name == "fas_omp" || name == "fas-omp") return SchemeKind::FasOmp;
    return std::nullopt;
}

std::string SchemeSpec::kernel_label() const {
    return kind == SchemeKind::Sbar ? std::string(to_string(kernel)) : std::string("none");
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t timeslots, double snr_db, std::size_t trial) {
    return base_seed ^ derive_seed(0x73626172ULL, {std::uint64_t(timeslots), std::bit_cast<std::uint64_t>(snr_db),
                                                   std::uint64_t(trial)});
}

std::uint64_t noise_seed(std::uint64_t seed) { return derive_seed(seed, {1}); }
std::uint64_t port_draw_seed(std::uint64_t seed) { return derive_seed(seed, {2}); }

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
    if (num_ports < 2) fail("N must be at least 2");
    if (antennas_per_slot < 1) fail("M must be at least 1");
    if (timeslots.empty()) fail("P list is empty");
    for (std::size_t p : timeslots) {
        if (p < 1) fail("every P must be at least 1");
        if (p * antennas_per_slot > num_ports)
            fail("P = " + std::to_string(p) + " gives P*M > N");
    }
    if (snr_db.empty()) fail("SNR list is empty");
    for (double s : snr_db)
        if (!std::isfinite(s)) fail("SNR values must be finite");
    if (trials < 1) fail("trials must be at least 1");
    if (!(carrier_hz > 0.0)) fail("carrier frequency must be positive");
    if (!(aperture_in_wavelengths > 0.0)) fail("aperture must be positive");
    if (schemes.empty()) fail("no schemes configured");
    if (dictionary_oversampling < 1) fail("dictionary oversampling must be at least 1");
    if (jitter && !(*jitter >= 0.0)) fail("jitter must be nonnegative");
    try {
        channel.validate();
    } catch (const Error& e) {
        fail(e.what());
    }
    bool needs_training = false;
    for (const auto& s : schemes) {
        if (s.kind == SchemeKind::Sbar && s.kernel == KernelKind::TrainedCovariance) needs_training = true;
        if (s.kind == SchemeKind::Sbar && s.kernel != KernelKind::TrainedCovariance && !(s.eta > 0.0))
            fail("kernel eta must be positive");
        if (s.kind == SchemeKind::Sbar && s.order < 0) fail("Bessel order must be nonnegative");
    }
    if (needs_training) {
        if (training_timeslots < 1) fail("training needs at least one timeslot");
        std::set<std::uint64_t> training;
        for (std::size_t t = 0; t < training_timeslots; ++t) training.insert(training_seed + t);
        for (std::size_t p : timeslots)
            for (double s : snr_db)
                for (std::size_t t = 0; t < trials; ++t)
                    if (training.count(trial_seed(base_seed, p, s, t)))
                        fail("training seeds overlap evaluation seeds (P = " + std::to_string(p) +
                             ", trial " + std::to_string(t) + ")");
    }
}

double nmse(const CVector& truth, const CVector& estimate) {
    if (truth.size() != estimate.size()) throw Error(ErrorCode::DimensionMismatch, "estimate length differs");
    const double denom = truth.squaredNorm();
    if (!(denom > 0.0)) throw Error(ErrorCode::ZeroNormTruth, "true channel has zero norm");
    return (truth - estimate).squaredNorm() / denom;
}

double nmse(const ChannelRealization& truth, const ChannelRealization& estimate) {
    return nmse(truth.values, estimate.values);
}

double ensemble_power(const ExperimentConfig& config) { return double(config.num_ports); }

PortGeometry geometry_for(const ExperimentConfig& config) {
    return build_port_geometry(config.num_ports, config.aperture_in_wavelengths, config.carrier_hz);
}

Kernel train_covariance_kernel(const ExperimentConfig& config, std::size_t timeslots) {
    if (timeslots < 1) throw Error(ErrorCode::EmptyTrainingSet, "training needs at least one timeslot");
    const PortGeometry geom = geometry_for(config);
    std::vector<ChannelRealization> training;
    training.reserve(timeslots);
    for (std::size_t t = 0; t < timeslots; ++t) {
        SscModelParams params = config.channel;
        params.rng_seed = config.training_seed + t;
        training.push_back(generate_ssc_channel(geom, params));
    }
    return kernel_covariance(training, config.jitter, config.carrier_hz);
}

Kernel build_scheme_kernel(const ExperimentConfig& config, const SchemeSpec& scheme) {
    if (scheme.kind != SchemeKind::Sbar) throw Error(ErrorCode::InvalidArgument, "only S-BAR schemes use a kernel");
    switch (scheme.kernel) {
    case KernelKind::Exponential: return kernel_exponential(geometry_for(config), scheme.alpha, scheme.eta, config.jitter);
    case KernelKind::Bessel:
        return kernel_bessel(geometry_for(config), scheme.alpha, scheme.eta, scheme.order, config.jitter);
    case KernelKind::TrainedCovariance: return train_covariance_kernel(config, config.training_timeslots);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown kernel kind");
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

struct SweepContext {
    const ExperimentConfig& config;
    const SweepHooks& hooks;
    PortGeometry geom;
    std::vector<std::optional<Kernel>> kernels;       // per scheme
    std::optional<SteeringDictionary> dictionary;
    std::vector<double> noise_powers;                 // per snr
    std::map<PlanKey, std::shared_ptr<const SamplingPlan>> plans;
    std::mutex hook_mutex;

    PlanKey key_for(std::size_t scheme, std::size_t p_idx, std::size_t s_idx) const {
        return {kernels[scheme]->fingerprint(), config.timeslots[p_idx], config.antennas_per_slot,
                noise_powers[s_idx]};
    }

    std::shared_ptr<const SamplingPlan> design(const Kernel& kernel, const PlanKey& key) {
        DesignObserver observer;
        if (hooks.on_design_step)
            observer = [&](const PosteriorState& st) { hooks.on_design_step(key, st); };
        auto plan = std::make_shared<const SamplingPlan>(
            design_plan(kernel, key.timeslots, key.antennas, key.noise_power, observer));
        if (hooks.on_plan) hooks.on_plan(key, *plan);
        return plan;
    }
};

} // namespace

std::vector<ResultRecord> run_sweep(const ExperimentConfig& config, const SweepHooks& hooks) {
    config.validate();
    SweepContext ctx{config, hooks, geometry_for(config), {}, {}, {}, {}, {}};

    std::optional<Kernel> trained;
    for (const auto& scheme : config.schemes) {
        if (scheme.kind != SchemeKind::Sbar) {
            ctx.kernels.emplace_back();
        } else if (scheme.kernel == KernelKind::TrainedCovariance) {
            if (!trained) trained = train_covariance_kernel(config, config.training_timeslots);
            ctx.kernels.emplace_back(*trained);
        } else {
            ctx.kernels.emplace_back(build_scheme_kernel(config, scheme));
        }
        if (scheme.kind == SchemeKind::FasOmp && !ctx.dictionary)
            ctx.dictionary.emplace(ctx.geom, config.dictionary_oversampling);
    }
    for (double snr : config.snr_db) ctx.noise_powers.push_back(noise_power_for_snr(ensemble_power(config), snr));

    const std::size_t n_schemes = config.schemes.size();
    const std::size_t n_p = config.timeslots.size();
    const std::size_t n_s = config.snr_db.size();
    const std::size_t n_t = config.trials;

    if (config.cache_plans) {
        for (std::size_t sc = 0; sc < n_schemes; ++sc) {
            if (!ctx.kernels[sc]) continue;
            for (std::size_t pi = 0; pi < n_p; ++pi)
                for (std::size_t si = 0; si < n_s; ++si) {
                    const PlanKey key = ctx.key_for(sc, pi, si);
                    if (!ctx.plans.count(key)) ctx.plans[key] = ctx.design(*ctx.kernels[sc], key);
                }
        }
    }

    std::vector<ResultRecord> records(n_schemes * n_p * n_s * n_t);
    auto slot = [&](std::size_t sc, std::size_t pi, std::size_t si, std::size_t t) -> ResultRecord& {
        return records[((sc * n_p + pi) * n_s + si) * n_t + t];
    };

    auto run_item = [&](std::size_t item) {
        const std::size_t t = item % n_t;
        const std::size_t si = (item / n_t) % n_s;
        const std::size_t pi = item / (n_t * n_s);
        const std::size_t P = config.timeslots[pi];
        const std::size_t PM = P * config.antennas_per_slot;
        const double snr = config.snr_db[si];
        const double noise = ctx.noise_powers[si];
        const std::uint64_t seed = trial_seed(config.base_seed, P, snr, t);

        SscModelParams params = config.channel;
        params.rng_seed = seed;
        const ChannelRealization h = generate_ssc_channel(ctx.geom, params);
        const std::uint64_t z_seed = noise_seed(seed);

        for (std::size_t sc = 0; sc < n_schemes; ++sc) {
            const SchemeSpec& scheme = config.schemes[sc];
            ResultRecord& rec = slot(sc, pi, si, t);
            rec.scheme = std::string(to_string(scheme.kind));
            rec.kernel_kind = scheme.kernel_label();
            rec.N = config.num_ports;
            rec.M = config.antennas_per_slot;
            rec.P = P;
            rec.snr_db = snr;
            rec.trial = t;
            rec.seed = seed;

            CVector estimate;
            std::int64_t stage2 = 0;
            switch (scheme.kind) {
            case SchemeKind::Sbar: {
                std::shared_ptr<const SamplingPlan> plan;
                const PlanKey key = ctx.key_for(sc, pi, si);
                if (config.cache_plans) {
                    plan = ctx.plans.at(key);
                } else {
                    std::lock_guard lock(ctx.hook_mutex);
                    plan = ctx.design(*ctx.kernels[sc], key);
                }
                const PilotObservation y = observe_pilots(h, *plan, noise, z_seed);
                const auto start = Clock::now();
                estimate = reconstruct_estimate(*plan, y);
                stage2 = elapsed_ns(start);
                break;
            }
            case SchemeKind::Selmmse: {
                const PortList ports = selmmse_ports(config.num_ports, PM);
                const PilotObservation y = observe_pilots(h, std::span<const PortIndex>(ports), noise, z_seed);
                const auto start = Clock::now();
                estimate = estimate_selmmse(y, ports, config.num_ports).values;
                stage2 = elapsed_ns(start);
                break;
            }
            case SchemeKind::FasOmp: {
                const PortList ports = random_ports(config.num_ports, PM, port_draw_seed(seed));
                const PilotObservation y = observe_pilots(h, std::span<const PortIndex>(ports), noise, z_seed);
                OmpOptions opts = scheme.omp;
                opts.max_atoms = std::min(opts.max_atoms, PM);
                const auto start = Clock::now();
                estimate = estimate_fas_omp(y, ports, *ctx.dictionary, opts).estimate.values;
                stage2 = elapsed_ns(start);
                break;
            }
            }
            rec.nmse = nmse(h.values, estimate);
            rec.wall_time_stage2_ns = config.record_timing ? stage2 : 0;
        }
    };

    const std::size_t total = n_p * n_s * n_t;
    std::size_t n_threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min(n_threads, total);

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            {
                std::lock_guard lock(err_mutex);
                if (first_error) return;
            }
            const std::size_t item = next.fetch_add(1);
            if (item >= total) return;
            try {
                run_item(item);
            } catch (const Error& e) {
                const std::size_t t = item % n_t;
                const std::size_t si = (item / n_t) % n_s;
                const std::size_t pi = item / (n_t * n_s);
                std::lock_guard lock(err_mutex);
                if (!first_error)
                    first_error = std::make_exception_ptr(
                        Error(e.code(), "trial " + std::to_string(t) + " at P = " + std::to_string(config.timeslots[pi]) +
                                            ", SNR = " + std::to_string(config.snr_db[si]) + " dB: " + e.what()));
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }
    if (first_error) std::rethrow_exception(first_error);
    return records;
}

std::vector<Series> summarize(std::span<const ResultRecord> records) {
    struct Acc {
        double sum = 0.0, sum_sq = 0.0;
        std::size_t count = 0;
    };
    std::vector<Series> series;
    std::vector<std::map<std::size_t, Acc>> accs;
    for (const auto& r : records) {
        std::size_t idx = series.size();
        for (std::size_t i = 0; i < series.size(); ++i)
            if (series[i].scheme == r.scheme && series[i].kernel_kind == r.kernel_kind && series[i].snr_db == r.snr_db) {
                idx = i;
                break;
            }
        if (idx == series.size()) {
            Series s;
            s.scheme = r.scheme;
            s.kernel_kind = r.kernel_kind;
            s.snr_db = r.snr_db;
            s.label = r.scheme + (r.kernel_kind == "none" ? std::string() : "/" + r.kernel_kind);
            series.push_back(std::move(s));
            accs.emplace_back();
        }
        Acc& a = accs[idx][r.P];
        a.sum += r.nmse;
        a.sum_sq += r.nmse * r.nmse;
        ++a.count;
    }
    std::set<double> snrs;
    for (const auto& s : series) snrs.insert(s.snr_db);
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (snrs.size() > 1) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " @ %g dB", series[i].snr_db);
            series[i].label += buf;
        }
        for (const auto& [p, a] : accs[i]) {
            const double mean = a.sum / double(a.count);
            double se = 0.0;
            if (a.count > 1) {
                const double var = std::max(0.0, (a.sum_sq - double(a.count) * mean * mean) / double(a.count - 1));
                se = std::sqrt(var / double(a.count));
            }
            series[i].points.push_back({p, mean, se, a.count});
        }
    }
    return series;
}

} // namespace sbar
