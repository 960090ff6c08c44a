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
#include <vector>

#include <Eigen/Eigenvalues>

#include "sbar/channel.hpp"
#include "sbar/kernels.hpp"
#include "support.hpp"

using namespace sbar;

// Reference values computed with mpmath at 30 digits.
TEST_CASE("library Bessel J matches high-precision references") {
    struct Ref {
        double nu, x, value;
    };
    const Ref refs[] = {
        {0, 0.5, 0.93846980724081290423}, {0, 1.0, 0.76519768655796655145},  {0, 5.0, -0.17759677131433830435},
        {0, 7.5, 0.26633965788037839687}, {0, 10.0, -0.2459357644513483352}, {1, 1.0, 0.44005058574493351596},
        {2, 10.0, 0.25463031368512062253},
    };
    for (const auto& r : refs) {
        CAPTURE(r.nu);
        CAPTURE(r.x);
        CHECK(std::abs(std::cyl_bessel_j(r.nu, r.x) - r.value) < 1e-14);
    }
    CHECK(std::abs(std::cyl_bessel_j(0.0, 2.404825557695773)) < 1e-14);
}

TEST_CASE("exponential kernel entries") {
    // Two ports one wavelength apart with eta = sqrt(2/pi): d^2/eta^2 = pi/2.
    const PortGeometry g = build_port_geometry(2, 1.0, 1e9);
    const Kernel k = kernel_exponential(g, 1.0, std::sqrt(2.0 / kPi), 0.0);
    CHECK(k.matrix()(0, 1).real() == doctest::Approx(0.20787957635076190855).epsilon(1e-14));
    CHECK(k.matrix()(0, 1).imag() == 0.0);
    CHECK(k.matrix()(0, 0).real() == 1.0);

    const Kernel k2 = kernel_exponential(g, 3.0, std::sqrt(2.0 / kPi), 0.0);
    CHECK(k2.matrix()(1, 0).real() == doctest::Approx(9.0 * 0.20787957635076190855).epsilon(1e-14));
}

TEST_CASE("Bessel kernel entries follow alpha^2 J_nu(d / eta)") {
    const PortGeometry g = build_port_geometry(32, 10.0, 3.5e9);
    const double alpha = 2.0, eta = 0.45;
    for (int order : {0, 1, 2}) {
        const Kernel k = kernel_bessel(g, alpha, eta, order, 0.0);
        for (Eigen::Index i = 0; i < 32; ++i)
            for (Eigen::Index j = 0; j < 32; ++j) {
                const double d = g.distance_in_wavelengths(PortIndex(i), PortIndex(j));
                CHECK(k.matrix()(i, j).real() ==
                      doctest::Approx(alpha * alpha * std::cyl_bessel_j(double(order), d / eta)).epsilon(1e-13));
            }
    }
}

TEST_CASE("default jitter is 1e-9 of the mean diagonal and is stored in the matrix") {
    const PortGeometry g = build_port_geometry(16, 4.0, 3.5e9);
    const Kernel k = kernel_bessel(g, 1.5, kDefaultEta, 0);
    CHECK(k.hyperparams().jitter == doctest::Approx(1e-9 * 2.25).epsilon(1e-12));
    CHECK(k.matrix()(3, 3).real() == doctest::Approx(2.25 + 2.25e-9).epsilon(1e-15));
    CHECK(k.mean_diagonal() == doctest::Approx(2.25 + 2.25e-9).epsilon(1e-15));
    const Kernel explicit_jitter = kernel_bessel(g, 1.5, kDefaultEta, 0, 0.5);
    CHECK(explicit_jitter.matrix()(3, 3).real() == doctest::Approx(2.75).epsilon(1e-15));
}

TEST_CASE("stationary kernels are Toeplitz, Hermitian and positive semidefinite") {
    const PortGeometry g = build_port_geometry(128, 10.0, 3.5e9);
    for (const Kernel& k : {kernel_exponential(g, 1.0, kDefaultEta), kernel_bessel(g, 1.0, kDefaultEta, 0)}) {
        const CMatrix& m = k.matrix();
        for (Eigen::Index i = 1; i < m.rows(); ++i)
            for (Eigen::Index j = 1; j < m.cols(); ++j) CHECK(m(i, j) == m(i - 1, j - 1));
        const KernelReport r = validate_kernel(k);
        CHECK(r.hermitian_deviation == 0.0);
        CHECK(r.positive_semidefinite);
        CHECK(r.min_eigenvalue > 0.0);
    }
}

TEST_CASE("kernel parameter checks") {
    const PortGeometry g = build_port_geometry(8, 2.0, 3.5e9);
    CHECK_SBAR_ERROR(kernel_exponential(g, 1.0, 0.0), ErrorCode::InvalidArgument);
    CHECK_SBAR_ERROR(kernel_bessel(g, 1.0, -1.0, 0), ErrorCode::InvalidArgument);
    CHECK_SBAR_ERROR(kernel_bessel(g, 1.0, 0.4, -1), ErrorCode::InvalidArgument);
    CHECK_SBAR_ERROR(kernel_bessel(g, 1.0, 0.4, 0, -1e-3), ErrorCode::InvalidArgument);
    CMatrix not_hermitian = CMatrix::Identity(3, 3);
    not_hermitian(0, 1) = Complex(0.0, 1.0);
    CHECK_SBAR_ERROR(Kernel(KernelKind::TrainedCovariance, not_hermitian, {}), ErrorCode::InvalidArgument);
    CHECK_SBAR_ERROR(Kernel(KernelKind::TrainedCovariance, CMatrix(2, 3), {}), ErrorCode::DimensionMismatch);
}

TEST_CASE("trained covariance from one channel is rank one") {
    std::mt19937_64 eng(5);
    ChannelRealization h{test::random_cvector(eng, 12), ChannelModel::External};
    const Kernel k = kernel_covariance(std::span<const ChannelRealization>(&h, 1), 0.0);
    const CMatrix expected = h.values * h.values.adjoint();
    CHECK((k.matrix() - expected).norm() < 1e-12 * expected.norm());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(k.matrix(), Eigen::EigenvaluesOnly);
    const RVector ev = es.eigenvalues();
    CHECK(ev[11] == doctest::Approx(h.values.squaredNorm()).epsilon(1e-12));
    CHECK(std::abs(ev[10]) < 1e-12 * ev[11]);
}

TEST_CASE("trained covariance averages outer products and adds jitter") {
    std::mt19937_64 eng(6);
    std::vector<ChannelRealization> training;
    for (int t = 0; t < 5; ++t) training.push_back({test::random_cvector(eng, 6), ChannelModel::External});
    CMatrix ref = CMatrix::Zero(6, 6);
    for (const auto& h : training) ref += h.values * h.values.adjoint();
    ref /= 5.0;
    const Kernel k = kernel_covariance(training);
    const double jitter = 1e-9 * ref.diagonal().real().mean();
    CHECK(k.hyperparams().jitter == doctest::Approx(jitter).epsilon(1e-12));
    ref.diagonal().array() += jitter;
    CHECK((k.matrix() - ref).norm() < 1e-12 * ref.norm());
    CHECK(validate_kernel(k).hermitian_deviation == 0.0);
}

TEST_CASE("trained covariance error paths") {
    std::vector<ChannelRealization> none;
    CHECK_SBAR_ERROR(kernel_covariance(none), ErrorCode::EmptyTrainingSet);
    std::vector<ChannelRealization> ragged{{CVector::Ones(3), ChannelModel::External},
                                           {CVector::Ones(4), ChannelModel::External}};
    CHECK_SBAR_ERROR(kernel_covariance(ragged), ErrorCode::LengthMismatch);
}

TEST_CASE("fingerprints track contents") {
    const PortGeometry g = build_port_geometry(16, 4.0, 3.5e9);
    const Kernel a = kernel_bessel(g, 1.0, 0.4, 0);
    const Kernel b = kernel_bessel(g, 1.0, 0.4, 0);
    const Kernel c = kernel_bessel(g, 1.0, 0.41, 0);
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(a.fingerprint() != c.fingerprint());
    CHECK(a.fingerprint() != kernel_exponential(g, 1.0, 0.4).fingerprint());
}

TEST_CASE("kernel kind names") {
    CHECK(to_string(KernelKind::Bessel) == "bessel");
    CHECK(parse_kernel_kind("bessel") == KernelKind::Bessel);
    CHECK(parse_kernel_kind("exponential") == KernelKind::Exponential);
    CHECK(parse_kernel_kind("covariance") == KernelKind::TrainedCovariance);
    CHECK(parse_kernel_kind(to_string(KernelKind::TrainedCovariance)) == KernelKind::TrainedCovariance);
    CHECK_FALSE(parse_kernel_kind("matern").has_value());
}

TEST_CASE("validate_kernel flags an indefinite matrix") {
    CMatrix m = CMatrix::Identity(3, 3);
    m(2, 2) = -1.0;
    const KernelReport r = validate_kernel(m, 0.0);
    CHECK_FALSE(r.positive_semidefinite);
    CHECK(r.min_eigenvalue == doctest::Approx(-1.0));
    CHECK(validate_kernel(CMatrix::Identity(4, 4), 1.0).condition_estimate == doctest::Approx(1.0));
}
