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

#include <Eigen/Core>

#include "sbar/channel.hpp"
#include "sbar/types.hpp"

namespace sbar {

class SamplingPlan;

// Row m of the M x N binary matrix carries a single one at column ports()[m].
// Construction rejects repeated ports; S * S^H = I_M.
class SwitchMatrix {
public:
    SwitchMatrix(std::size_t num_ports, PortList ports);

    std::size_t num_ports() const { return num_ports_; }
    std::size_t rows() const { return ports_.size(); }
    const PortList& ports() const { return ports_; }

    Eigen::MatrixXi dense() const;

    // Rows of every matrix in `slots`, top to bottom.
    static SwitchMatrix stack(std::span<const SwitchMatrix> slots);

private:
    std::size_t num_ports_;
    PortList ports_;
};

// Row and column conditions of a 0/1 switch matrix plus S * S^H == I, in integers.
bool is_valid_switch_matrix(const Eigen::MatrixXi& s);

struct PilotObservation {
    CVector values;
    double noise_power = 0.0;
    std::uint64_t plan_id = 0;

    std::size_t size() const { return std::size_t(values.size()); }
};

// Identifier for an observation taken on an ad-hoc port list (baselines).
std::uint64_t port_list_id(std::size_t num_ports, std::span<const PortIndex> ports);

// Noise sample at one port for one trial, seeded by (seed, port). Schemes that
// measure the same port in the same trial see the same noise.
Complex port_noise(std::uint64_t seed, PortIndex port, double noise_power);

// y(k) = h(ports[k]) + z(ports[k]).
PilotObservation observe_pilots(const ChannelRealization& h, std::span<const PortIndex> ports,
                                double noise_power, std::uint64_t rng_seed);

// Same, measuring in the plan's order and binding the result to the plan.
PilotObservation observe_pilots(const ChannelRealization& h, const SamplingPlan& plan,
                                double noise_power, std::uint64_t rng_seed);

} // namespace sbar
