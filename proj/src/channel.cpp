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

#include "sbar/channel.hpp"

#include <cmath>
#include <vector>

#include "sbar/error.hpp"
#include "sbar/rng.hpp"
#include "sbar/simd/ops.hpp"

namespace sbar {

namespace {

// Phasors advance by complex rotation and are re-anchored with std::polar
// every kResync ports.
constexpr std::size_t kResync = 64;

void steering_into(const PortGeometry& geom, double sin_theta, std::vector<Complex>& out) {
    const std::size_t n_ports = geom.num_ports();
    const double step_wl = geom.aperture_in_wavelengths() / double(n_ports - 1);
    const double phase_step = -2.0 * kPi * step_wl * sin_theta;
    const Complex rot = std::polar(1.0, phase_step);
    out.resize(n_ports);
    Complex p{1.0, 0.0};
    for (std::size_t n = 0; n < n_ports; ++n) {
        if (n % kResync == 0) p = std::polar(1.0, phase_step * double(n));
        out[n] = p;
        p *= rot;
    }
}

} // namespace

void SscModelParams::validate() const {
    if (num_clusters < 1) throw Error(ErrorCode::InvalidArgument, "SSC model needs C >= 1");
    if (rays_per_cluster < 1) throw Error(ErrorCode::InvalidArgument, "SSC model needs R >= 1");
    if (!(angle_spread_deg >= 0.0 && angle_spread_deg < 90.0))
        throw Error(ErrorCode::InvalidArgument, "angle spread must lie in [0, 90) degrees");
}

ChannelRealization synthesize_channel(const PortGeometry& geom, std::span<const Ray> rays,
                                      double scale) {
    std::vector<Complex> h(geom.num_ports(), Complex{});
    std::vector<Complex> steer;
    for (const Ray& ray : rays) {
        steering_into(geom, std::sin(ray.angle_rad), steer);
        simd::axpy(ray.gain * scale, steer, h);
    }
    ChannelRealization out;
    out.values = Eigen::Map<const CVector>(h.data(), Eigen::Index(h.size()));
    out.model = ChannelModel::External;
    return out;
}

ChannelRealization generate_ssc_channel(const PortGeometry& geom, const SscModelParams& params) {
    params.validate();
    Rng eng(params.rng_seed);
    std::uniform_real_distribution<double> center_deg(-kClusterCenterLimitDeg, kClusterCenterLimitDeg);
    std::uniform_real_distribution<double> offset_deg(-params.angle_spread_deg,
                                                      params.angle_spread_deg);
    std::normal_distribution<double> unit(0.0, 1.0);

    const std::size_t total = params.num_clusters * params.rays_per_cluster;
    std::vector<Ray> rays;
    rays.reserve(total);
    constexpr double deg = kPi / 180.0;
    for (std::size_t c = 0; c < params.num_clusters; ++c) {
        const double center = center_deg(eng);
        for (std::size_t r = 0; r < params.rays_per_cluster; ++r) {
            const double angle = (center + offset_deg(eng)) * deg;
            const double re = unit(eng);
            const double im = unit(eng);
            rays.push_back({Complex(re, im) * std::sqrt(0.5), angle});
        }
    }
    ChannelRealization out = synthesize_channel(geom, rays, 1.0 / std::sqrt(double(total)));
    out.model = ChannelModel::Ssc;
    return out;
}

double noise_power_for_snr(double h_ensemble_power, double snr_db) {
    if (!(h_ensemble_power > 0.0))
        throw Error(ErrorCode::InvalidArgument, "ensemble channel power must be positive");
    return h_ensemble_power / std::pow(10.0, snr_db / 10.0);
}

} // namespace sbar
