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

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

#include "sbar/geometry.hpp"
#include "sbar/types.hpp"

namespace sbar {

enum class ChannelModel { Ssc, External };

struct ChannelRealization {
    CVector values;
    ChannelModel model = ChannelModel::External;

    std::size_t size() const { return std::size_t(values.size()); }
};

// Spatially-sparse clustered model: C clusters of R rays each.
struct SscModelParams {
    std::size_t num_clusters = 9;
    std::size_t rays_per_cluster = 100;
    double angle_spread_deg = 5.0;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

// Cluster centers are drawn uniformly on this open interval (degrees).
inline constexpr double kClusterCenterLimitDeg = 60.0;

struct Ray {
    Complex gain;
    double angle_rad;
};

// h(n) = scale * sum_r gain_r * exp(-j 2 pi x_n sin(theta_r) / lambda).
ChannelRealization synthesize_channel(const PortGeometry& geom, std::span<const Ray> rays,
                                      double scale);

// Draws C*R rays (complex Gaussian gains, unit variance) and normalizes by
// 1/sqrt(C*R): E|h(n)|^2 = 1, E||h||^2 = N. Pure in (geom, params).
ChannelRealization generate_ssc_channel(const PortGeometry& geom, const SscModelParams& params);

// sigma^2 = E||h||^2 / 10^(snr_db / 10).
double noise_power_for_snr(double h_ensemble_power, double snr_db);

// Standard circularly-symmetric complex normal sample with variance `power`.
template <class Engine>
Complex complex_gaussian(Engine& eng, double power) {
    std::normal_distribution<double> unit(0.0, 1.0);
    const double s = std::sqrt(power / 2.0);
    const double re = unit(eng);
    const double im = unit(eng);
    return {s * re, s * im};
}

} // namespace sbar
