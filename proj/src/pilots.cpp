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

#include "sbar/pilots.hpp"

#include <string>

#include "sbar/error.hpp"
#include "sbar/hash.hpp"
#include "sbar/plan.hpp"
#include "sbar/rng.hpp"

namespace sbar {

SwitchMatrix::SwitchMatrix(std::size_t num_ports, PortList ports)
    : num_ports_(num_ports), ports_(std::move(ports)) {
    std::vector<bool> used(num_ports_, false);
    for (PortIndex p : ports_) {
        if (p >= num_ports_)
            throw Error(ErrorCode::InvalidArgument, "port index " + std::to_string(p + 1) + " out of range");
        if (used[p])
            throw Error(ErrorCode::DuplicateIndex, "port " + std::to_string(p + 1) + " selected twice");
        used[p] = true;
    }
}

Eigen::MatrixXi SwitchMatrix::dense() const {
    Eigen::MatrixXi s = Eigen::MatrixXi::Zero(Eigen::Index(rows()), Eigen::Index(num_ports_));
    for (std::size_t m = 0; m < rows(); ++m) s(Eigen::Index(m), Eigen::Index(ports_[m])) = 1;
    return s;
}

SwitchMatrix SwitchMatrix::stack(std::span<const SwitchMatrix> slots) {
    if (slots.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to stack");
    PortList all;
    for (const auto& s : slots) {
        if (s.num_ports() != slots.front().num_ports())
            throw Error(ErrorCode::DimensionMismatch, "switch matrices disagree on N");
        all.insert(all.end(), s.ports().begin(), s.ports().end());
    }
    return SwitchMatrix(slots.front().num_ports(), std::move(all));
}

bool is_valid_switch_matrix(const Eigen::MatrixXi& s) {
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s.data()[i] != 0 && s.data()[i] != 1) return false;
    if ((s.rowwise().sum().array() != 1).any()) return false;
    if ((s.colwise().sum().array() > 1).any()) return false;
    const Eigen::MatrixXi gram = s * s.transpose();
    return gram == Eigen::MatrixXi::Identity(s.rows(), s.rows());
}

std::uint64_t port_list_id(std::size_t num_ports, std::span<const PortIndex> ports) {
    Fnv1a h;
    h.add_u64(num_ports);
    h.add_u64(ports.size());
    for (PortIndex p : ports) h.add_u64(p);
    return h.value();
}

Complex port_noise(std::uint64_t seed, PortIndex port, double noise_power) {
    Rng eng(derive_seed(seed, {std::uint64_t(port)}));
    return complex_gaussian(eng, noise_power);
}

PilotObservation observe_pilots(const ChannelRealization& h, std::span<const PortIndex> ports,
                                double noise_power, std::uint64_t rng_seed) {
    if (!(noise_power >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise power must be >= 0");
    PilotObservation y;
    y.values.resize(Eigen::Index(ports.size()));
    y.noise_power = noise_power;
    y.plan_id = port_list_id(h.size(), ports);
    for (std::size_t k = 0; k < ports.size(); ++k) {
        if (ports[k] >= h.size())
            throw Error(ErrorCode::DimensionMismatch, "measured port outside the channel");
        Complex v = h.values[Eigen::Index(ports[k])];
        if (noise_power > 0.0) v += port_noise(rng_seed, ports[k], noise_power);
        y.values[Eigen::Index(k)] = v;
    }
    return y;
}

PilotObservation observe_pilots(const ChannelRealization& h, const SamplingPlan& plan,
                                double noise_power, std::uint64_t rng_seed) {
    if (h.size() != plan.num_ports())
        throw Error(ErrorCode::DimensionMismatch,
                    "channel has " + std::to_string(h.size()) + " ports, plan expects " +
                        std::to_string(plan.num_ports()));
    PilotObservation y = observe_pilots(h, std::span<const PortIndex>(plan.order()), noise_power, rng_seed);
    y.plan_id = plan.id();
    return y;
}

} // namespace sbar
