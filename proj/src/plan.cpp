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

#include "sbar/plan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "sbar/error.hpp"
#include "sbar/hash.hpp"
#include "sbar/simd/ops.hpp"

namespace sbar {

namespace {

// Relative bound on the weight-solve residual, against max |K|.
constexpr double kWeightResidualTolerance = 1e-8;

std::uint64_t plan_id(std::size_t n, std::size_t p, std::size_t m, const PortList& order,
                      double noise_power, std::uint64_t kernel_fp) {
    Fnv1a f;
    f.add_string("sbar-plan");
    f.add_u64(n);
    f.add_u64(p);
    f.add_u64(m);
    f.add_f64(noise_power);
    f.add_u64(kernel_fp);
    for (PortIndex k : order) f.add_u64(k);
    return f.value();
}

void check_order(std::size_t num_ports, std::span<const PortIndex> order) {
    std::vector<bool> seen(num_ports, false);
    for (PortIndex k : order) {
        if (k >= num_ports) throw Error(ErrorCode::InvalidArgument, "port index out of range");
        if (seen[k]) throw Error(ErrorCode::DuplicateIndex, "port " + std::to_string(k + 1) + " repeated");
        seen[k] = true;
    }
}

CMatrix gram_block(const Kernel& kernel, std::span<const PortIndex> order, double noise_power) {
    const Eigen::Index pm = Eigen::Index(order.size());
    CMatrix a(pm, pm);
    for (Eigen::Index j = 0; j < pm; ++j)
        for (Eigen::Index i = 0; i < pm; ++i)
            a(i, j) = kernel.matrix()(Eigen::Index(order[std::size_t(i)]), Eigen::Index(order[std::size_t(j)]));
    a.diagonal().array() += noise_power;
    return a;
}

CMatrix row_block(const Kernel& kernel, std::span<const PortIndex> order) {
    CMatrix b(Eigen::Index(order.size()), kernel.matrix().cols());
    for (std::size_t k = 0; k < order.size(); ++k) b.row(Eigen::Index(k)) = kernel.matrix().row(Eigen::Index(order[k]));
    return b;
}

} // namespace

SamplingPlan::SamplingPlan(std::size_t num_ports, std::size_t num_timeslots, std::size_t antennas_per_slot,
                           PortList order, RowMajorCMatrix weights, RVector posterior_variance,
                           double noise_power, std::uint64_t kernel_fingerprint)
    : num_ports_(num_ports),
      num_timeslots_(num_timeslots),
      antennas_per_slot_(antennas_per_slot),
      order_(std::move(order)),
      weights_(std::move(weights)),
      posterior_variance_(std::move(posterior_variance)),
      noise_power_(noise_power),
      kernel_fingerprint_(kernel_fingerprint) {
    switch_ = plan_to_switch_matrices(num_ports_, order_, num_timeslots_, antennas_per_slot_);
    if (weights_.rows() != Eigen::Index(order_.size()) || weights_.cols() != Eigen::Index(num_ports_))
        throw Error(ErrorCode::DimensionMismatch, "weight matrix must be PM x N");
    if (posterior_variance_.size() != Eigen::Index(num_ports_))
        throw Error(ErrorCode::DimensionMismatch, "posterior variance must have N entries");
    if (!(noise_power_ >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise power must be >= 0");
    id_ = plan_id(num_ports_, num_timeslots_, antennas_per_slot_, order_, noise_power_, kernel_fingerprint_);
}

std::vector<SwitchMatrix> plan_to_switch_matrices(std::size_t num_ports, std::span<const PortIndex> order,
                                                  std::size_t num_timeslots, std::size_t antennas_per_slot) {
    if (num_timeslots == 0 || antennas_per_slot == 0)
        throw Error(ErrorCode::InvalidArgument, "P and M must be positive");
    if (order.size() != num_timeslots * antennas_per_slot)
        throw Error(ErrorCode::LengthMismatch, "order holds " + std::to_string(order.size()) +
                                                   " ports, expected P*M = " +
                                                   std::to_string(num_timeslots * antennas_per_slot));
    check_order(num_ports, order);
    std::vector<SwitchMatrix> slots;
    slots.reserve(num_timeslots);
    for (std::size_t p = 0; p < num_timeslots; ++p) {
        const auto first = order.begin() + std::ptrdiff_t(p * antennas_per_slot);
        slots.emplace_back(num_ports, PortList(first, first + std::ptrdiff_t(antennas_per_slot)));
    }
    return slots;
}

RowMajorCMatrix compute_weights(const Kernel& kernel, std::span<const PortIndex> order, double noise_power) {
    if (!(noise_power >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise power must be >= 0");
    check_order(kernel.size(), order);
    if (order.empty()) return RowMajorCMatrix(0, Eigen::Index(kernel.size()));
    const CMatrix a = gram_block(kernel, order, noise_power);
    const CMatrix b = row_block(kernel, order);
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorCode::SingularSystem, "K(order,order) + sigma^2 I is not positive definite");
    RowMajorCMatrix w = llt.solve(b);
    const double residual = (a * w - b).cwiseAbs().maxCoeff();
    const double scale = kernel.matrix().cwiseAbs().maxCoeff();
    if (!(residual < kWeightResidualTolerance * scale))
        throw Error(ErrorCode::SingularSystem, "weight solve residual " + std::to_string(residual) +
                                                   " exceeds tolerance; increase the kernel jitter");
    return w;
}

double weight_residual(const Kernel& kernel, std::span<const PortIndex> order, double noise_power,
                       const RowMajorCMatrix& weights) {
    const CMatrix a = gram_block(kernel, order, noise_power);
    const CMatrix b = row_block(kernel, order);
    return (a * weights - b).cwiseAbs().maxCoeff();
}

SamplingPlan design_plan(const Kernel& kernel, std::size_t num_timeslots, std::size_t antennas_per_slot,
                         double noise_power, const DesignObserver& observer) {
    if (num_timeslots == 0 || antennas_per_slot == 0)
        throw Error(ErrorCode::InvalidArgument, "P and M must be positive");
    const std::size_t total = num_timeslots * antennas_per_slot;
    if (total > kernel.size())
        throw Error(ErrorCode::PlanTooLarge, "P*M = " + std::to_string(total) + " exceeds N = " +
                                                 std::to_string(kernel.size()));
    PosteriorState state(kernel, noise_power);
    for (std::size_t step = 0; step < total; ++step) {
        state.condition_on(state.next_candidate());
        if (observer) observer(state);
    }
    RowMajorCMatrix w = compute_weights(kernel, state.measured(), noise_power);
    return SamplingPlan(kernel.size(), num_timeslots, antennas_per_slot, state.measured(), std::move(w),
                        state.variances(), noise_power, kernel.fingerprint());
}

namespace {

constexpr std::size_t kReconstructTile = 512;

void check_observation(const SamplingPlan& plan, const PilotObservation& y) {
    if (y.size() != plan.num_measurements())
        throw Error(ErrorCode::DimensionMismatch, "observation has " + std::to_string(y.size()) +
                                                      " pilots, plan expects " +
                                                      std::to_string(plan.num_measurements()));
    if (y.plan_id != plan.id())
        throw Error(ErrorCode::FingerprintMismatch, "observation was not taken with this plan");
    const double tol = 1e-12 * std::max(1.0, std::abs(plan.noise_power()));
    if (std::abs(y.noise_power - plan.noise_power()) > tol)
        throw Error(ErrorCode::NoisePowerMismatch, "plan designed for sigma^2 = " +
                                                       std::to_string(plan.noise_power()) +
                                                       ", observation has " + std::to_string(y.noise_power));
}

} // namespace

CVector reconstruct_estimate(const SamplingPlan& plan, const PilotObservation& y) {
    check_observation(plan, y);
    const std::size_t n = plan.num_ports();
    CVector est = CVector::Zero(Eigen::Index(n));
    const RowMajorCMatrix& w = plan.weights();
    // Tiled over ports.
    for (std::size_t lo = 0; lo < n; lo += kReconstructTile) {
        const std::size_t len = std::min(kReconstructTile, n - lo);
        for (Eigen::Index k = 0; k < w.rows(); ++k)
            simd::axpy_conj(y.values[k], std::span<const Complex>(w.row(k).data() + lo, len),
                            std::span<Complex>(est.data() + lo, len));
    }
    return est;
}

Reconstruction reconstruct(const SamplingPlan& plan, const PilotObservation& y) {
    Reconstruction r;
    r.estimate = reconstruct_estimate(plan, y);
    r.post_variance = plan.posterior_variance();
    const RVector half = kConfidenceBandScale * r.post_variance;
    r.real_lo = r.estimate.real() - half;
    r.real_hi = r.estimate.real() + half;
    r.imag_lo = r.estimate.imag() - half;
    r.imag_hi = r.estimate.imag() + half;
    return r;
}

} // namespace sbar
