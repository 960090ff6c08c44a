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

#include "sbar/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "sbar/error.hpp"
#include "sbar/hash.hpp"

namespace sbar {

std::string_view to_string(KernelKind kind) {
    switch (kind) {
    case KernelKind::Exponential: return "exponential";
    case KernelKind::Bessel: return "bessel";
    case KernelKind::TrainedCovariance: return "covariance";
    }
    return "unknown";
}

std::optional<KernelKind> parse_kernel_kind(std::string_view name) {
    if (name == "exponential" || name == "exp") return KernelKind::Exponential;
    if (name == "bessel") return KernelKind::Bessel;
    if (name == "covariance" || name == "cov") return KernelKind::TrainedCovariance;
    return std::nullopt;
}

namespace {

std::uint64_t fingerprint_of(KernelKind kind, const CMatrix& m, const KernelHyperparams& h,
                             double carrier_hz) {
    Fnv1a f;
    f.add_string(to_string(kind));
    f.add_u64(std::uint64_t(m.rows()));
    f.add_f64(h.alpha);
    f.add_f64(h.eta);
    f.add_u64(std::uint64_t(std::int64_t(h.order)));
    f.add_f64(h.jitter);
    f.add_f64(carrier_hz);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) f.add_complex(m(i, j));
    return f.value();
}

// Builds the Toeplitz matrix A(i,j) = value(|i-j|) for a stationary kernel on the uniform grid.
template <class F>
CMatrix stationary_matrix(const PortGeometry& geom, F&& value_at_distance) {
    const std::size_t n = geom.num_ports();
    std::vector<double> lag(n);
    for (std::size_t k = 0; k < n; ++k) lag[k] = value_at_distance(geom.distance_in_wavelengths(0, k));
    CMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) m(Eigen::Index(i), Eigen::Index(j)) = lag[i > j ? i - j : j - i];
    return m;
}

double resolve_jitter(std::optional<double> jitter, const CMatrix& m) {
    const double j = jitter ? *jitter : default_jitter(m);
    if (!(j >= 0.0)) throw Error(ErrorCode::InvalidArgument, "jitter must be nonnegative");
    return j;
}

void check_eta(double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw Error(ErrorCode::InvalidArgument, "kernel length scale eta must be positive");
}

} // namespace

Kernel::Kernel(KernelKind kind, CMatrix matrix, KernelHyperparams hyper, double carrier_hz)
    : kind_(kind), matrix_(std::move(matrix)), hyper_(hyper), carrier_hz_(carrier_hz) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
        throw Error(ErrorCode::DimensionMismatch, "kernel matrix must be square and non-empty");
    for (Eigen::Index j = 0; j < matrix_.cols(); ++j)
        for (Eigen::Index i = j; i < matrix_.rows(); ++i)
            if (matrix_(i, j) != std::conj(matrix_(j, i)))
                throw Error(ErrorCode::InvalidArgument, "kernel matrix is not exactly Hermitian");
    fingerprint_ = fingerprint_of(kind_, matrix_, hyper_, carrier_hz_);
}

double Kernel::mean_diagonal() const { return matrix_.diagonal().real().mean(); }

double default_jitter(const CMatrix& unjittered) {
    return 1e-9 * unjittered.diagonal().real().sum() / double(unjittered.rows());
}

CMatrix hermitian_part(const CMatrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
    CMatrix h(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        h(j, j) = Complex(a(j, j).real(), 0.0);
        for (Eigen::Index i = j + 1; i < a.rows(); ++i) {
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

Kernel kernel_exponential(const PortGeometry& geom, double alpha, double eta,
                          std::optional<double> jitter) {
    check_eta(eta);
    const double a2 = alpha * alpha;
    CMatrix m = stationary_matrix(geom, [&](double d) { return a2 * std::exp(-(d * d) / (eta * eta)); });
    const double j = resolve_jitter(jitter, m);
    m.diagonal().array() += j;
    return Kernel(KernelKind::Exponential, std::move(m), {alpha, eta, 0, j}, geom.carrier_hz());
}

Kernel kernel_bessel(const PortGeometry& geom, double alpha, double eta, int order,
                     std::optional<double> jitter) {
    check_eta(eta);
    if (order < 0) throw Error(ErrorCode::InvalidArgument, "Bessel order must be nonnegative");
    const double a2 = alpha * alpha;
    const double nu = double(order);
    CMatrix m = stationary_matrix(geom, [&](double d) { return a2 * std::cyl_bessel_j(nu, d / eta); });
    const double j = resolve_jitter(jitter, m);
    m.diagonal().array() += j;
    return Kernel(KernelKind::Bessel, std::move(m), {alpha, eta, order, j}, geom.carrier_hz());
}

Kernel kernel_covariance(std::span<const ChannelRealization> training, std::optional<double> jitter,
                         double carrier_hz) {
    if (training.empty()) throw Error(ErrorCode::EmptyTrainingSet, "no training channels");
    const Eigen::Index n = Eigen::Index(training.front().size());
    if (n == 0) throw Error(ErrorCode::LengthMismatch, "training channels are empty");
    CMatrix acc = CMatrix::Zero(n, n);
    for (const auto& h : training) {
        if (Eigen::Index(h.size()) != n)
            throw Error(ErrorCode::LengthMismatch, "training channels differ in length");
        acc.noalias() += h.values * h.values.adjoint();
    }
    acc /= double(training.size());
    CMatrix m = hermitian_part(acc);
    const double j = resolve_jitter(jitter, m);
    m.diagonal().array() += j;
    return Kernel(KernelKind::TrainedCovariance, std::move(m), {0.0, 0.0, 0, j}, carrier_hz);
}

KernelReport validate_kernel(const CMatrix& matrix, double noise_power) {
    KernelReport r;
    for (Eigen::Index j = 0; j < matrix.cols(); ++j)
        for (Eigen::Index i = 0; i < matrix.rows(); ++i)
            r.hermitian_deviation = std::max(r.hermitian_deviation, std::abs(matrix(i, j) - std::conj(matrix(j, i))));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(matrix), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "eigensolver did not converge");
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.max_eigenvalue = es.eigenvalues().maxCoeff();
    const double lo = r.min_eigenvalue + noise_power;
    const double hi = r.max_eigenvalue + noise_power;
    r.condition_estimate = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    const double scale = matrix.diagonal().real().sum() / double(matrix.rows());
    r.positive_semidefinite = r.min_eigenvalue >= -1e-8 * std::abs(scale);
    return r;
}

KernelReport validate_kernel(const Kernel& kernel, double noise_power) {
    return validate_kernel(kernel.matrix(), noise_power);
}

} // namespace sbar
