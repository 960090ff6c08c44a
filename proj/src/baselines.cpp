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

#include "sbar/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/QR>

#include "sbar/error.hpp"
#include "sbar/rng.hpp"
#include "sbar/simd/ops.hpp"

namespace sbar {

SteeringDictionary::SteeringDictionary(const PortGeometry& geom, std::size_t oversampling) {
    if (oversampling == 0) throw Error(ErrorCode::InvalidArgument, "oversampling must be positive");
    const std::size_t n = geom.num_ports();
    const std::size_t g = oversampling * n;
    grid_.resize(g);
    atoms_.resize(Eigen::Index(n), Eigen::Index(g));
    const double step_wl = geom.aperture_in_wavelengths() / double(n - 1);
    for (std::size_t col = 0; col < g; ++col) {
        grid_[col] = -1.0 + 2.0 * double(col) / double(g);
        for (std::size_t row = 0; row < n; ++row) {
            const double phase = -2.0 * kPi * double(row) * step_wl * grid_[col];
            atoms_(Eigen::Index(row), Eigen::Index(col)) = std::polar(1.0, phase);
        }
    }
}

PortList selmmse_ports(std::size_t num_ports, std::size_t num_measurements) {
    if (num_measurements == 0 || num_measurements > num_ports)
        throw Error(ErrorCode::InvalidArgument, "need 1 <= PM <= N equally spaced ports");
    PortList ports(num_measurements);
    const double spacing = double(num_ports) / double(num_measurements);
    for (std::size_t k = 1; k <= num_measurements; ++k) {
        const auto one_based = std::size_t(std::llround((double(k) - 0.5) * spacing));
        ports[k - 1] = std::clamp<std::size_t>(one_based, 1, num_ports) - 1;
    }
    return ports;
}

ChannelRealization estimate_selmmse(const PilotObservation& y, std::span<const PortIndex> ports,
                                    std::size_t num_ports) {
    if (y.size() != ports.size() || ports.empty())
        throw Error(ErrorCode::DimensionMismatch, "one pilot per measured port required");
    std::vector<std::size_t> by_port(ports.size());
    std::iota(by_port.begin(), by_port.end(), std::size_t{0});
    std::sort(by_port.begin(), by_port.end(), [&](auto a, auto b) { return ports[a] < ports[b]; });
    for (std::size_t k = 0; k < ports.size(); ++k)
        if (ports[k] >= num_ports) throw Error(ErrorCode::DimensionMismatch, "measured port outside the array");

    ChannelRealization out;
    out.values.resize(Eigen::Index(num_ports));
    std::size_t right = 0; // first sorted measurement with port >= n
    for (std::size_t n = 0; n < num_ports; ++n) {
        while (right < by_port.size() && ports[by_port[right]] < n) ++right;
        std::size_t pick;
        if (right == by_port.size()) {
            pick = by_port.back();
        } else if (right == 0) {
            pick = by_port.front();
        } else {
            const std::size_t lo = by_port[right - 1], hi = by_port[right];
            pick = (n - ports[lo] <= ports[hi] - n) ? lo : hi;
        }
        out.values[Eigen::Index(n)] = y.values[Eigen::Index(pick)];
    }
    return out;
}

PortList random_ports(std::size_t num_ports, std::size_t num_measurements, std::uint64_t seed) {
    if (num_measurements > num_ports) throw Error(ErrorCode::InvalidArgument, "cannot draw more ports than N");
    PortList all(num_ports);
    std::iota(all.begin(), all.end(), PortIndex{0});
    PortList out;
    out.reserve(num_measurements);
    Rng eng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(out), std::ptrdiff_t(num_measurements), eng);
    std::sort(out.begin(), out.end());
    return out;
}

OmpResult estimate_fas_omp(const PilotObservation& y, std::span<const PortIndex> ports,
                           const SteeringDictionary& dict, const OmpOptions& options) {
    const std::size_t pm = ports.size();
    if (y.size() != pm) throw Error(ErrorCode::DimensionMismatch, "one pilot per measured port required");
    if (options.max_atoms > pm) throw Error(ErrorCode::InvalidArgument, "max_atoms must not exceed PM");

    const std::size_t g = dict.num_atoms();
    CMatrix sub(static_cast<Eigen::Index>(pm), static_cast<Eigen::Index>(g));
    for (std::size_t k = 0; k < pm; ++k) {
        if (ports[k] >= dict.num_ports()) throw Error(ErrorCode::DimensionMismatch, "measured port outside the array");
        sub.row(Eigen::Index(k)) = dict.matrix().row(Eigen::Index(ports[k]));
    }

    OmpResult result;
    const double y_norm = y.values.norm();
    CVector residual = y.values;
    CVector coeffs;
    result.residual_norms.push_back(y_norm);
    std::vector<bool> used(g, false);
    std::vector<double> corr(g);

    while (result.atoms.size() < options.max_atoms && residual.norm() > options.residual_tol * y_norm) {
        double best_corr = -1.0;
        for (std::size_t col = 0; col < g; ++col) {
            if (used[col]) {
                corr[col] = -1.0;
                continue;
            }
            corr[col] = std::abs(simd::dotc(std::span<const Complex>(sub.col(Eigen::Index(col)).data(), pm),
                                            std::span<const Complex>(residual.data(), pm)));
            best_corr = std::max(best_corr, corr[col]);
        }
        if (best_corr < 0.0) break;
        std::size_t best = 0;
        while (corr[best] < best_corr * (1.0 - kOmpTieTolerance)) ++best;

        CMatrix selected(Eigen::Index(pm), Eigen::Index(result.atoms.size() + 1));
        for (std::size_t i = 0; i < result.atoms.size(); ++i)
            selected.col(Eigen::Index(i)) = sub.col(Eigen::Index(result.atoms[i]));
        selected.col(selected.cols() - 1) = sub.col(Eigen::Index(best));

        Eigen::ColPivHouseholderQR<CMatrix> qr(selected);
        qr.setThreshold(1e-10);
        if (qr.rank() < selected.cols()) {
            result.rank_deficient = true;
            break;
        }
        coeffs = qr.solve(y.values);
        residual = y.values - selected * coeffs;
        used[best] = true;
        result.atoms.push_back(best);
        result.residual_norms.push_back(residual.norm());
    }

    std::vector<Complex> h(dict.num_ports(), Complex{});
    for (std::size_t i = 0; i < result.atoms.size(); ++i)
        simd::axpy(coeffs[Eigen::Index(i)],
                   std::span<const Complex>(dict.matrix().col(Eigen::Index(result.atoms[i])).data(), h.size()), h);
    result.estimate.values = Eigen::Map<const CVector>(h.data(), Eigen::Index(h.size()));
    return result;
}

} // namespace sbar
