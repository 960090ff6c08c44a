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

#include <cmath>
#include <random>
#include <vector>

#include "sbar/channel.hpp"
#include "sbar/geometry.hpp"
#include "sbar/rng.hpp"
#include "support.hpp"

using namespace sbar;

TEST_CASE("port geometry at 3.5 GHz") {
    const PortGeometry g = build_port_geometry(256, 10.0, 3.5e9);
    CHECK(g.wavelength() == doctest::Approx(0.0856549880).epsilon(1e-9));
    CHECK(g.aperture_length() == doctest::Approx(0.856549880).epsilon(1e-9));
    CHECK(g.num_ports() == 256);
    CHECK(g.position(0) == 0.0);
    CHECK(g.position(255) == doctest::Approx(g.aperture_length()).epsilon(1e-14));
    CHECK(g.distance_in_wavelengths(0, 255) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(g.distance_in_wavelengths(7, 3) == doctest::Approx(4.0 * 10.0 / 255.0).epsilon(1e-14));
}

TEST_CASE("five ports over two wavelengths at 1 GHz") {
    const PortGeometry g = build_port_geometry(5, 2.0, 1e9);
    CHECK(g.wavelength() == doctest::Approx(0.299792458).epsilon(1e-12));
    CHECK(g.spacing() == doctest::Approx(0.149896229).epsilon(1e-9));
    for (std::size_t n = 1; n < 5; ++n)
        CHECK(g.position(n) - g.position(n - 1) == doctest::Approx(g.spacing()).epsilon(1e-12));
}

TEST_CASE("geometry rejects degenerate input") {
    CHECK_SBAR_ERROR(build_port_geometry(1, 1.0, 1e9), ErrorCode::InvalidArgument);
    CHECK_SBAR_ERROR(build_port_geometry(4, 0.0, 1e9), ErrorCode::InvalidArgument);
    CHECK_SBAR_ERROR(build_port_geometry(4, 1.0, -1.0), ErrorCode::InvalidArgument);
}

TEST_CASE("single broadside ray gives a constant channel") {
    const PortGeometry g = build_port_geometry(16, 3.0, 2e9);
    const Ray ray{Complex(1.0, 0.0), 0.0};
    const ChannelRealization h = synthesize_channel(g, std::span<const Ray>(&ray, 1), 1.0);
    for (Eigen::Index n = 0; n < h.values.size(); ++n) CHECK(std::abs(h.values[n] - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("synthesized rays match direct steering-vector evaluation") {
    const PortGeometry g = build_port_geometry(300, 10.0, 3.5e9);
    std::mt19937_64 eng(9);
    std::uniform_real_distribution<double> ang(-1.2, 1.2);
    std::vector<Ray> rays;
    for (int r = 0; r < 7; ++r) rays.push_back({complex_gaussian(eng, 1.0), ang(eng)});
    const double scale = 0.37;
    const ChannelRealization h = synthesize_channel(g, rays, scale);
    double worst = 0.0;
    for (std::size_t n = 0; n < 300; ++n) {
        Complex ref{};
        for (const Ray& r : rays)
            ref += r.gain * std::polar(1.0, -2.0 * kPi * g.position(n) * std::sin(r.angle_rad) / g.wavelength());
        worst = std::max(worst, std::abs(h.values[Eigen::Index(n)] - scale * ref));
    }
    CHECK(worst < 1e-11);
}

TEST_CASE("SSC channels are reproducible and seed dependent") {
    const PortGeometry g = build_port_geometry(64, 10.0, 3.5e9);
    SscModelParams p;
    p.rng_seed = 17;
    const ChannelRealization a = generate_ssc_channel(g, p);
    const ChannelRealization b = generate_ssc_channel(g, p);
    CHECK(a.model == ChannelModel::Ssc);
    CHECK(a.values == b.values);
    p.rng_seed = 18;
    CHECK(generate_ssc_channel(g, p).values != a.values);
}

TEST_CASE("SSC channels have unit average power per port") {
    const PortGeometry g = build_port_geometry(64, 10.0, 3.5e9);
    SscModelParams p;
    double total = 0.0;
    const int trials = 400;
    for (int t = 0; t < trials; ++t) {
        p.rng_seed = 1000 + std::uint64_t(t);
        total += generate_ssc_channel(g, p).values.squaredNorm() / 64.0;
    }
    CHECK(total / trials == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("SSC parameter validation") {
    SscModelParams p;
    CHECK_NOTHROW(p.validate());
    p.num_clusters = 0;
    CHECK_SBAR_ERROR(p.validate(), ErrorCode::InvalidArgument);
    p = SscModelParams{};
    p.rays_per_cluster = 0;
    CHECK_SBAR_ERROR(p.validate(), ErrorCode::InvalidArgument);
    p = SscModelParams{};
    p.angle_spread_deg = -1.0;
    CHECK_SBAR_ERROR(p.validate(), ErrorCode::InvalidArgument);
}

TEST_CASE("noise power from SNR") {
    CHECK(noise_power_for_snr(256.0, 20.0) == doctest::Approx(2.56).epsilon(1e-14));
    CHECK(noise_power_for_snr(10.0, 0.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(noise_power_for_snr(1.0, -10.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK_SBAR_ERROR(noise_power_for_snr(0.0, 10.0), ErrorCode::InvalidArgument);
}

TEST_CASE("complex Gaussian samples have the requested variance") {
    std::mt19937_64 eng(4);
    double sum = 0.0, re = 0.0, im = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const Complex z = complex_gaussian(eng, 3.0);
        sum += std::norm(z);
        re += z.real() * z.real();
        im += z.imag() * z.imag();
    }
    CHECK(sum / n == doctest::Approx(3.0).epsilon(0.02));
    CHECK(re / n == doctest::Approx(1.5).epsilon(0.02));
    CHECK(im / n == doctest::Approx(1.5).epsilon(0.02));
}

TEST_CASE("seed derivation") {
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
    static_assert(mix64(0) == 0xe220a8397b1dcdafULL);
}
