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

#include <random>

#include <Eigen/Dense>

#include "sbar/channel.hpp"
#include "sbar/kernels.hpp"
#include "sbar/pilots.hpp"
#include "sbar/plan.hpp"
#include "support.hpp"

using namespace sbar;

namespace {

Kernel random_kernel(std::mt19937_64& eng, Eigen::Index n) {
    return Kernel(KernelKind::TrainedCovariance, test::random_hpd(eng, n), {});
}

} // namespace

TEST_CASE("weights match an explicit-inverse oracle") {
    std::mt19937_64 eng(21);
    const Kernel k = random_kernel(eng, 12);
    const PortList order{5, 0, 11, 7};
    const double noise = 0.25;
    const RowMajorCMatrix w = compute_weights(k, order, noise);
    CMatrix koo(4, 4), kon(4, 12);
    for (Eigen::Index a = 0; a < 4; ++a) {
        for (Eigen::Index b = 0; b < 4; ++b) koo(a, b) = k.matrix()(Eigen::Index(order[a]), Eigen::Index(order[b]));
        kon.row(a) = k.matrix().row(Eigen::Index(order[a]));
    }
    const CMatrix ref = (koo + noise * CMatrix::Identity(4, 4)).inverse() * kon;
    CHECK((CMatrix(w) - ref).norm() < 1e-12 * ref.norm());
    CHECK(weight_residual(k, order, noise, w) < 1e-12);
}

TEST_CASE("switch matrices hand out the order slot by slot") {
    const auto slots = plan_to_switch_matrices(8, PortList{4, 1, 7, 0, 2, 6}, 3, 2);
    REQUIRE(slots.size() == 3);
    CHECK(slots[0].ports() == PortList{4, 1});
    CHECK(slots[1].ports() == PortList{7, 0});
    CHECK(slots[2].ports() == PortList{2, 6});
    const Eigen::MatrixXi d = slots[1].dense();
    CHECK(d.rows() == 2);
    CHECK(d.cols() == 8);
    CHECK(d(0, 7) == 1);
    CHECK(d(1, 0) == 1);
    CHECK(d.sum() == 2);
    const Eigen::MatrixXi s = SwitchMatrix::stack(slots).dense();
    CHECK(is_valid_switch_matrix(s));
    CHECK(s * s.transpose() == Eigen::MatrixXi::Identity(6, 6));

    CHECK_SBAR_ERROR(plan_to_switch_matrices(8, PortList{1, 2, 3}, 2, 2), ErrorCode::LengthMismatch);
    CHECK_SBAR_ERROR(plan_to_switch_matrices(8, PortList{1, 2, 1, 3}, 2, 2), ErrorCode::DuplicateIndex);
}

TEST_CASE("switch matrix validity checks") {
    CHECK_SBAR_ERROR(SwitchMatrix(4, PortList{0, 0}), ErrorCode::DuplicateIndex);
    CHECK_SBAR_ERROR(SwitchMatrix(4, PortList{4}), ErrorCode::InvalidArgument);
    Eigen::MatrixXi two_in_row(1, 3);
    two_in_row << 1, 1, 0;
    CHECK_FALSE(is_valid_switch_matrix(two_in_row));
    Eigen::MatrixXi shared_column(2, 3);
    shared_column << 0, 1, 0, 0, 1, 0;
    CHECK_FALSE(is_valid_switch_matrix(shared_column));
    Eigen::MatrixXi not_binary(1, 2);
    not_binary << 2, 0;
    CHECK_FALSE(is_valid_switch_matrix(not_binary));
    Eigen::MatrixXi good(2, 3);
    good << 0, 0, 1, 1, 0, 0;
    CHECK(is_valid_switch_matrix(good));
}

TEST_CASE("design produces a consistent plan") {
    const PortGeometry g = build_port_geometry(64, 10.0, 3.5e9);
    const Kernel k = kernel_bessel(g, 1.0, kDefaultEta, 0);
    int steps = 0;
    const SamplingPlan plan = design_plan(k, 3, 4, 0.64, [&](const PosteriorState&) { ++steps; });
    CHECK(steps == 12);
    CHECK(plan.num_measurements() == 12);
    CHECK(plan.switch_matrices().size() == 3);
    CHECK(plan.weights().rows() == 12);
    CHECK(plan.weights().cols() == 64);
    CHECK(plan.kernel_fingerprint() == k.fingerprint());
    CHECK(plan.order()[0] == 0); // flat prior diagonal: first pick is port 1
    CHECK(weight_residual(k, plan.order(), 0.64, plan.weights()) < 1e-10);
    PosteriorState st(k, 0.64);
    for (PortIndex n : plan.order()) st.condition_on(n);
    CHECK((st.variances() - plan.posterior_variance()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_SBAR_ERROR(design_plan(k, 17, 4, 0.64), ErrorCode::PlanTooLarge);
    CHECK_SBAR_ERROR(design_plan(k, 0, 4, 0.64), ErrorCode::InvalidArgument);
}

TEST_CASE("reconstruction equals w^H y and carries the variance band") {
    std::mt19937_64 eng(22);
    const Kernel k = random_kernel(eng, 16);
    const SamplingPlan plan = design_plan(k, 2, 3, 0.2);
    const ChannelRealization h{test::random_cvector(eng, 16), ChannelModel::External};
    const PilotObservation y = observe_pilots(h, plan, 0.2, 99);
    CHECK(y.plan_id == plan.id());
    const Reconstruction r = reconstruct(plan, y);
    const CVector ref = CMatrix(plan.weights()).adjoint() * y.values;
    CHECK((r.estimate - ref).norm() < 1e-12 * ref.norm());
    CHECK(r.estimate == reconstruct_estimate(plan, y));
    for (Eigen::Index n = 0; n < 16; ++n) {
        const double half = 3.0 * plan.posterior_variance()[n];
        CHECK(r.post_variance[n] == plan.posterior_variance()[n]);
        CHECK(r.real_lo[n] == doctest::Approx(r.estimate[n].real() - half));
        CHECK(r.real_hi[n] == doctest::Approx(r.estimate[n].real() + half));
        CHECK(r.imag_lo[n] == doctest::Approx(r.estimate[n].imag() - half));
        CHECK(r.imag_hi[n] == doctest::Approx(r.estimate[n].imag() + half));
    }
}

TEST_CASE("reconstruction rejects foreign observations") {
    std::mt19937_64 eng(23);
    const Kernel k = random_kernel(eng, 10);
    const SamplingPlan plan = design_plan(k, 2, 2, 0.5);
    const SamplingPlan other = design_plan(k, 2, 2, 0.6);
    const ChannelRealization h{test::random_cvector(eng, 10), ChannelModel::External};
    const PilotObservation y = observe_pilots(h, plan, 0.5, 1);

    CHECK_SBAR_ERROR(reconstruct(other, y), ErrorCode::FingerprintMismatch);
    PilotObservation wrong_noise = y;
    wrong_noise.noise_power = 0.7;
    CHECK_SBAR_ERROR(reconstruct(plan, wrong_noise), ErrorCode::NoisePowerMismatch);
    PilotObservation short_y = y;
    short_y.values.conservativeResize(3);
    CHECK_SBAR_ERROR(reconstruct(plan, short_y), ErrorCode::DimensionMismatch);
}

TEST_CASE("all ports measured without noise recovers the channel") {
    const PortGeometry g = build_port_geometry(24, 5.0, 3.5e9);
    const Kernel k = kernel_exponential(g, 1.0, kDefaultEta);
    const SamplingPlan plan = design_plan(k, 6, 4, 0.0);
    SscModelParams params;
    params.rng_seed = 5;
    const ChannelRealization h = generate_ssc_channel(g, params);
    const CVector est = reconstruct_estimate(plan, observe_pilots(h, plan, 0.0, 0));
    CHECK((est - h.values).squaredNorm() / h.values.squaredNorm() < 1e-12);
}

TEST_CASE("pilot noise is shared by port across port lists") {
    std::mt19937_64 eng(24);
    const ChannelRealization h{test::random_cvector(eng, 10), ChannelModel::External};
    const PortList a{1, 4, 7}, b{7, 2, 4};
    const PilotObservation ya = observe_pilots(h, std::span<const PortIndex>(a), 0.5, 1234);
    const PilotObservation yb = observe_pilots(h, std::span<const PortIndex>(b), 0.5, 1234);
    CHECK(ya.values[1] == yb.values[2]);
    CHECK(ya.values[2] == yb.values[0]);
    CHECK(ya.values[0] - h.values[1] == port_noise(1234, 1, 0.5));
    CHECK(ya.plan_id == port_list_id(10, a));
    CHECK(port_list_id(10, a) != port_list_id(10, b));
    const PilotObservation quiet = observe_pilots(h, std::span<const PortIndex>(a), 0.0, 1234);
    CHECK(quiet.values[2] == h.values[7]);
    CHECK_SBAR_ERROR(observe_pilots(h, std::span<const PortIndex>(PortList{10}), 0.5, 1), ErrorCode::DimensionMismatch);
}

TEST_CASE("plan identity depends on every design input") {
    std::mt19937_64 eng(25);
    const Kernel k = random_kernel(eng, 12);
    const SamplingPlan a = design_plan(k, 2, 2, 0.5);
    CHECK(a.id() == design_plan(k, 2, 2, 0.5).id());
    CHECK(a.id() != design_plan(k, 4, 1, 0.5).id());
    CHECK(a.id() != design_plan(k, 2, 2, 0.25).id());
}
