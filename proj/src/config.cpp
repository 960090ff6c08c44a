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

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sbar/error.hpp"
#include "sbar/harness.hpp"

namespace sbar {

namespace {

using nlohmann::json;

constexpr std::string_view kConfigFormat = "sbar-experiment";
constexpr int kConfigVersion = 1;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); }

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, const std::string& where) {
    const std::set<std::string_view> allowed(known);
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) bad("unknown key '" + key + "' in " + where);
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        bad(std::string("wrong type for '") + key + "'");
    }
}

SchemeSpec scheme_from_json(const json& j) {
    if (!j.is_object()) bad("scheme entries must be objects");
    SchemeSpec s;
    const auto name = get_or<std::string>(j, "scheme", "");
    const auto kind = parse_scheme_kind(name);
    if (!kind) bad("unknown scheme '" + name + "'");
    s.kind = *kind;
    switch (s.kind) {
    case SchemeKind::Sbar: {
        reject_unknown(j, {"scheme", "kernel", "alpha", "eta", "order"}, "SBAR scheme");
        const auto kname = get_or<std::string>(j, "kernel", "bessel");
        const auto kk = parse_kernel_kind(kname);
        if (!kk) bad("unknown kernel '" + kname + "'");
        s.kernel = *kk;
        s.alpha = get_or(j, "alpha", s.alpha);
        s.eta = get_or(j, "eta", s.eta);
        s.order = get_or(j, "order", s.order);
        break;
    }
    case SchemeKind::Selmmse: reject_unknown(j, {"scheme"}, "SELMMSE scheme"); break;
    case SchemeKind::FasOmp:
        reject_unknown(j, {"scheme", "max_atoms", "residual_tol"}, "FAS_OMP scheme");
        s.omp.max_atoms = get_or(j, "max_atoms", s.omp.max_atoms);
        s.omp.residual_tol = get_or(j, "residual_tol", s.omp.residual_tol);
        break;
    }
    return s;
}

json scheme_to_json(const SchemeSpec& s) {
    json j;
    j["scheme"] = std::string(to_string(s.kind));
    if (s.kind == SchemeKind::Sbar) {
        j["kernel"] = std::string(to_string(s.kernel));
        j["alpha"] = s.alpha;
        j["eta"] = s.eta;
        j["order"] = s.order;
    } else if (s.kind == SchemeKind::FasOmp) {
        j["max_atoms"] = s.omp.max_atoms;
        j["residual_tol"] = s.omp.residual_tol;
    }
    return j;
}

} // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) bad("config must be a JSON object");
    reject_unknown(j,
                   {"format", "version", "N", "M", "P", "snr_db", "trials", "carrier_hz", "aperture_in_wavelengths",
                    "channel", "schemes", "base_seed", "training", "jitter", "dictionary_oversampling", "cache_plans",
                    "record_timing", "threads", "output"},
                   "config");
    if (get_or<std::string>(j, "format", std::string(kConfigFormat)) != kConfigFormat)
        bad("config format must be '" + std::string(kConfigFormat) + "'");
    if (const int v = get_or(j, "version", kConfigVersion); v != kConfigVersion)
        bad("unsupported config version " + std::to_string(v));

    ExperimentConfig c;
    c.num_ports = get_or(j, "N", c.num_ports);
    c.antennas_per_slot = get_or(j, "M", c.antennas_per_slot);
    c.timeslots = get_or(j, "P", c.timeslots);
    c.snr_db = get_or(j, "snr_db", c.snr_db);
    c.trials = get_or(j, "trials", c.trials);
    c.carrier_hz = get_or(j, "carrier_hz", c.carrier_hz);
    c.aperture_in_wavelengths = get_or(j, "aperture_in_wavelengths", c.aperture_in_wavelengths);
    if (const auto it = j.find("channel"); it != j.end()) {
        if (!it->is_object()) bad("'channel' must be an object");
        reject_unknown(*it, {"clusters", "rays_per_cluster", "angle_spread_deg"}, "channel");
        c.channel.num_clusters = get_or(*it, "clusters", c.channel.num_clusters);
        c.channel.rays_per_cluster = get_or(*it, "rays_per_cluster", c.channel.rays_per_cluster);
        c.channel.angle_spread_deg = get_or(*it, "angle_spread_deg", c.channel.angle_spread_deg);
    }
    if (const auto it = j.find("schemes"); it != j.end()) {
        if (!it->is_array()) bad("'schemes' must be an array");
        for (const auto& s : *it) c.schemes.push_back(scheme_from_json(s));
    }
    c.base_seed = get_or(j, "base_seed", c.base_seed);
    if (const auto it = j.find("training"); it != j.end()) {
        if (!it->is_object()) bad("'training' must be an object");
        reject_unknown(*it, {"timeslots", "seed"}, "training");
        c.training_timeslots = get_or(*it, "timeslots", c.training_timeslots);
        c.training_seed = get_or(*it, "seed", c.training_seed);
    }
    if (const auto it = j.find("jitter"); it != j.end() && !it->is_null()) c.jitter = get_or<double>(j, "jitter", 0.0);
    c.dictionary_oversampling = get_or(j, "dictionary_oversampling", c.dictionary_oversampling);
    c.cache_plans = get_or(j, "cache_plans", c.cache_plans);
    c.record_timing = get_or(j, "record_timing", c.record_timing);
    c.threads = get_or(j, "threads", c.threads);
    c.output_path = get_or<std::string>(j, "output", "");
    return c;
}

std::string config_to_json_text(const ExperimentConfig& c) {
    json j;
    j["format"] = std::string(kConfigFormat);
    j["version"] = kConfigVersion;
    j["N"] = c.num_ports;
    j["M"] = c.antennas_per_slot;
    j["P"] = c.timeslots;
    j["snr_db"] = c.snr_db;
    j["trials"] = c.trials;
    j["carrier_hz"] = c.carrier_hz;
    j["aperture_in_wavelengths"] = c.aperture_in_wavelengths;
    j["channel"] = {{"clusters", c.channel.num_clusters},
                    {"rays_per_cluster", c.channel.rays_per_cluster},
                    {"angle_spread_deg", c.channel.angle_spread_deg}};
    j["schemes"] = json::array();
    for (const auto& s : c.schemes) j["schemes"].push_back(scheme_to_json(s));
    j["base_seed"] = c.base_seed;
    j["training"] = {{"timeslots", c.training_timeslots}, {"seed", c.training_seed}};
    j["jitter"] = c.jitter ? json(*c.jitter) : json(nullptr);
    j["dictionary_oversampling"] = c.dictionary_oversampling;
    j["cache_plans"] = c.cache_plans;
    j["record_timing"] = c.record_timing;
    j["threads"] = c.threads;
    j["output"] = c.output_path.string();
    return j.dump(2) + "\n";
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

} // namespace sbar
