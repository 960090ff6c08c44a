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
#include <vector>

#include "sbar/kernels.hpp"
#include "sbar/types.hpp"

namespace sbar {

// Gaussian posterior over the port channels after noisy measurements at the
// ports in measured(). Holds no observations: the covariance does not depend on them.
class PosteriorState {
public:
    PosteriorState(const Kernel& prior, double noise_power);

    const PortList& measured() const { return measured_; }
    const CMatrix& covariance() const { return cov_; }
    RVector variances() const { return cov_.diagonal().real(); }
    double noise_power() const { return noise_power_; }
    std::uint64_t prior_fingerprint() const { return prior_fingerprint_; }
    std::size_t num_ports() const { return std::size_t(cov_.rows()); }
    bool is_measured(PortIndex n) const { return n < is_measured_.size() && is_measured_[n]; }

    // Conditions on one more measurement at port n:
    //   cov -= c c^H / (v + sigma^2),  c = cov(:, n), v = cov(n, n).
    void condition_on(PortIndex n);

    // Unmeasured port of largest posterior variance. Values within
    // kTieTolerance * mean prior variance of the maximum count as tied, and
    // the smallest tied index wins.
    PortIndex next_candidate() const;

    static constexpr double kTieTolerance = 1e-12;
    static constexpr double kDenominatorFloor = 1e-14;

private:
    CMatrix cov_;
    PortList measured_;
    std::vector<bool> is_measured_;
    double noise_power_;
    double prior_scale_; // trace(prior) / N
    std::uint64_t prior_fingerprint_;
};

// Functional form of PosteriorState::condition_on.
PosteriorState posterior_update_one(const PosteriorState& state, PortIndex n_star);

// Picks the tie-broken argmax of `values` over the entries not flagged in `excluded`.
PortIndex select_max_variance(const RVector& values, const std::vector<bool>& excluded,
                              double tie_tolerance);

} // namespace sbar
