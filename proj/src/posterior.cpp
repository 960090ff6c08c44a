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

#include "sbar/posterior.hpp"

#include <limits>
#include <span>
#include <string>

#include "sbar/error.hpp"
#include "sbar/simd/ops.hpp"

namespace sbar {

PosteriorState::PosteriorState(const Kernel& prior, double noise_power)
    : cov_(prior.matrix()),
      is_measured_(prior.size(), false),
      noise_power_(noise_power),
      prior_scale_(prior.mean_diagonal()),
      prior_fingerprint_(prior.fingerprint()) {
    if (!(noise_power >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise power must be >= 0");
}

void PosteriorState::condition_on(PortIndex n) {
    const Eigen::Index size = cov_.rows();
    if (n >= std::size_t(size)) throw Error(ErrorCode::InvalidArgument, "port index out of range");
    if (is_measured_[n])
        throw Error(ErrorCode::IndexAlreadyMeasured, "port " + std::to_string(n + 1) + " already measured");

    const double denom = cov_(Eigen::Index(n), Eigen::Index(n)).real() + noise_power_;
    if (!(denom > kDenominatorFloor * prior_scale_))
        throw Error(ErrorCode::NonpositiveDenominator,
                    "posterior variance at port " + std::to_string(n + 1) +
                        " collapsed; increase the kernel jitter");

    const CVector c = cov_.col(Eigen::Index(n));
    // Lower triangle via column axpys, then mirrored.
    for (Eigen::Index j = 0; j < size; ++j) {
        const Complex coeff = -std::conj(c[j]) / denom;
        const std::size_t len = std::size_t(size - j);
        simd::axpy(coeff, std::span<const Complex>(c.data() + j, len),
                   std::span<Complex>(cov_.col(j).data() + j, len));
        cov_(j, j) = Complex(cov_(j, j).real(), 0.0);
    }
    for (Eigen::Index j = 0; j < size; ++j)
        for (Eigen::Index i = j + 1; i < size; ++i) cov_(j, i) = std::conj(cov_(i, j));

    measured_.push_back(n);
    is_measured_[n] = true;
}

PortIndex select_max_variance(const RVector& values, const std::vector<bool>& excluded,
                              double tie_tolerance) {
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (!excluded[std::size_t(i)]) best = std::max(best, values[i]);
    if (best == -std::numeric_limits<double>::infinity())
        throw Error(ErrorCode::PlanTooLarge, "every port is already measured");
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (!excluded[std::size_t(i)] && values[i] >= best - tie_tolerance) return PortIndex(i);
    return PortIndex(0); // unreachable: the maximizer itself qualifies
}

PortIndex PosteriorState::next_candidate() const {
    return select_max_variance(variances(), is_measured_, kTieTolerance * std::abs(prior_scale_));
}

PosteriorState posterior_update_one(const PosteriorState& state, PortIndex n_star) {
    PosteriorState next = state;
    next.condition_on(n_star);
    return next;
}

} // namespace sbar
