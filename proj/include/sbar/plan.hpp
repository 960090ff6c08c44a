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
#include <functional>
#include <span>
#include <vector>

#include "sbar/kernels.hpp"
#include "sbar/pilots.hpp"
#include "sbar/posterior.hpp"
#include "sbar/types.hpp"

namespace sbar {

// Offline artifact of the design stage: which ports to visit in which pilot
// slot, and the linear weights that map the P*M pilots to the N-port estimate.
class SamplingPlan {
public:
    SamplingPlan(std::size_t num_ports, std::size_t num_timeslots, std::size_t antennas_per_slot,
                 PortList order, RowMajorCMatrix weights, RVector posterior_variance,
                 double noise_power, std::uint64_t kernel_fingerprint);

    std::size_t num_ports() const { return num_ports_; }
    std::size_t num_timeslots() const { return num_timeslots_; }
    std::size_t antennas_per_slot() const { return antennas_per_slot_; }
    std::size_t num_measurements() const { return order_.size(); }

    // Selection order (zero-based ports); entry k is pilot k.
    const PortList& order() const { return order_; }
    const std::vector<SwitchMatrix>& switch_matrices() const { return switch_; }
    SwitchMatrix stacked_switch_matrix() const { return SwitchMatrix::stack(switch_); }

    // PM x N, row k holds the weights of pilot k.
    const RowMajorCMatrix& weights() const { return weights_; }
    // Posterior variance per port after all P*M design-time measurements.
    const RVector& posterior_variance() const { return posterior_variance_; }
    double noise_power() const { return noise_power_; }
    std::uint64_t kernel_fingerprint() const { return kernel_fingerprint_; }
    std::uint64_t id() const { return id_; }

private:
    std::size_t num_ports_;
    std::size_t num_timeslots_;
    std::size_t antennas_per_slot_;
    PortList order_;
    std::vector<SwitchMatrix> switch_;
    RowMajorCMatrix weights_;
    RVector posterior_variance_;
    double noise_power_;
    std::uint64_t kernel_fingerprint_;
    std::uint64_t id_;
};

// Slot p gets order[p*M .. p*M + M), antenna m the m-th of those.
std::vector<SwitchMatrix> plan_to_switch_matrices(std::size_t num_ports, std::span<const PortIndex> order,
                                                  std::size_t num_timeslots, std::size_t antennas_per_slot);

// w = (K(order, order) + sigma^2 I)^-1 K(order, :), solved through a Cholesky factorization.
RowMajorCMatrix compute_weights(const Kernel& kernel, std::span<const PortIndex> order, double noise_power);

// Largest entry of |(K(order,order) + sigma^2 I) w - K(order,:)|.
double weight_residual(const Kernel& kernel, std::span<const PortIndex> order, double noise_power,
                       const RowMajorCMatrix& weights);

// Called with the posterior after every greedy step.
using DesignObserver = std::function<void(const PosteriorState&)>;

// Greedy maximum-posterior-variance selection of P*M ports followed by the weight solve.
SamplingPlan design_plan(const Kernel& kernel, std::size_t num_timeslots, std::size_t antennas_per_slot,
                         double noise_power, const DesignObserver& observer = {});

struct Reconstruction {
    CVector estimate;
    RVector post_variance;
    // estimate +/- 3 * post_variance, separately on the real and imaginary parts.
    RVector real_lo, real_hi, imag_lo, imag_hi;
};

inline constexpr double kConfidenceBandScale = 3.0;

// h_hat = w^H y. Reads nothing but the plan and the observation.
Reconstruction reconstruct(const SamplingPlan& plan, const PilotObservation& y);

// Only the estimate, for callers that time the online stage.
CVector reconstruct_estimate(const SamplingPlan& plan, const PilotObservation& y);

} // namespace sbar
