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

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "sbar/channel.hpp"
#include "sbar/geometry.hpp"
#include "sbar/types.hpp"

namespace sbar {

enum class KernelKind { Exponential, Bessel, TrainedCovariance };

std::string_view to_string(KernelKind kind);
std::optional<KernelKind> parse_kernel_kind(std::string_view name);

// Kernel distances and `eta` are in carrier wavelengths. The default
// sqrt(1/(2 pi)) is sqrt(lambda / 2 pi) with lambda as the unit of length.
inline const double kDefaultEta = std::sqrt(1.0 / (2.0 * kPi));

struct KernelHyperparams {
    double alpha = 1.0;
    double eta = kDefaultEta;
    int order = 0;
    double jitter = 0.0; // already included in Kernel::matrix()
};

// Prior covariance over the N ports. The stored matrix is exactly Hermitian
// and already carries the jitter recorded in hyperparams().
class Kernel {
public:
    Kernel(KernelKind kind, CMatrix matrix, KernelHyperparams hyper, double carrier_hz = 0.0);

    KernelKind kind() const { return kind_; }
    const CMatrix& matrix() const { return matrix_; }
    const KernelHyperparams& hyperparams() const { return hyper_; }
    double carrier_hz() const { return carrier_hz_; }
    std::size_t size() const { return std::size_t(matrix_.rows()); }
    double mean_diagonal() const;
    std::uint64_t fingerprint() const { return fingerprint_; }

private:
    KernelKind kind_;
    CMatrix matrix_;
    KernelHyperparams hyper_;
    double carrier_hz_;
    std::uint64_t fingerprint_;
};

// 1e-9 * trace(A) / N.
double default_jitter(const CMatrix& unjittered);

// (A + A^H) / 2 with an exactly real diagonal.
CMatrix hermitian_part(const CMatrix& a);

// alpha^2 exp(-d^2 / eta^2), d in wavelengths. Without an explicit jitter the default rule applies.
Kernel kernel_exponential(const PortGeometry& geom, double alpha, double eta,
                          std::optional<double> jitter = std::nullopt);

// alpha^2 J_order(d / eta), d in wavelengths.
Kernel kernel_bessel(const PortGeometry& geom, double alpha, double eta, int order,
                     std::optional<double> jitter = std::nullopt);

// (1/T) sum_t h_t h_t^H, Hermitian-symmetrized, plus jitter * I.
Kernel kernel_covariance(std::span<const ChannelRealization> training,
                         std::optional<double> jitter = std::nullopt, double carrier_hz = 0.0);

struct KernelReport {
    double hermitian_deviation = 0.0; // max |A(i,j) - conj(A(j,i))|
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double condition_estimate = 0.0; // of A + noise_power * I
    bool positive_semidefinite = false; // min eig >= -1e-8 trace / N
};

KernelReport validate_kernel(const CMatrix& matrix, double noise_power = 0.0);
KernelReport validate_kernel(const Kernel& kernel, double noise_power = 0.0);

} // namespace sbar
