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
#include <span>
#include <vector>

#include "sbar/channel.hpp"
#include "sbar/geometry.hpp"
#include "sbar/pilots.hpp"
#include "sbar/types.hpp"

namespace sbar {

// Steering vectors a_n(s) = exp(-j 2 pi x_n s / lambda) on a grid of G sine
// values s_g = -1 + 2g/G, g = 0..G-1. Every column has norm sqrt(N).
class SteeringDictionary {
public:
    SteeringDictionary(const PortGeometry& geom, std::size_t oversampling = 4);

    std::size_t num_ports() const { return std::size_t(atoms_.rows()); }
    std::size_t num_atoms() const { return std::size_t(atoms_.cols()); }
    const CMatrix& matrix() const { return atoms_; }
    const std::vector<double>& sine_grid() const { return grid_; }

private:
    CMatrix atoms_;
    std::vector<double> grid_;
};

// The PM equally spaced ports round((k - 1/2) N / PM), k = 1..PM (1-based), as zero-based indices.
PortList selmmse_ports(std::size_t num_ports, std::size_t num_measurements);

// Zero-order hold: each port takes the value of its nearest measured port, ties to the lower index.
ChannelRealization estimate_selmmse(const PilotObservation& y, std::span<const PortIndex> ports,
                                    std::size_t num_ports);

// PM distinct ports drawn uniformly without replacement, returned in ascending order.
PortList random_ports(std::size_t num_ports, std::size_t num_measurements, std::uint64_t seed);

// Atom correlations within this relative margin of the maximum are tied; the smallest index wins.
inline constexpr double kOmpTieTolerance = 1e-12;

struct OmpOptions {
    std::size_t max_atoms = 9;
    double residual_tol = 1e-3;
};

struct OmpResult {
    ChannelRealization estimate;
    std::vector<std::size_t> atoms;       // selection order
    std::vector<double> residual_norms;   // [0] = ||y||, then one per accepted atom
    bool rank_deficient = false;          // refit stopped on a nearly collinear atom
};

OmpResult estimate_fas_omp(const PilotObservation& y, std::span<const PortIndex> ports,
                           const SteeringDictionary& dict, const OmpOptions& options = {});

} // namespace sbar
