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

#include <random>

#include <doctest.h>

#include "sbar/error.hpp"
#include "sbar/types.hpp"

namespace sbar::test {

inline CVector random_cvector(std::mt19937_64& eng, Eigen::Index n) {
    std::normal_distribution<double> g;
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(g(eng), g(eng));
    return v;
}

inline CMatrix random_cmatrix(std::mt19937_64& eng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(eng), g(eng));
    return m;
}

// Hermitian positive definite, exactly symmetric.
inline CMatrix random_hpd(std::mt19937_64& eng, Eigen::Index n) {
    const CMatrix a = random_cmatrix(eng, n, n);
    CMatrix k = a * a.adjoint() / double(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = Complex(k(i, i).real() + 0.1, 0.0);
        for (Eigen::Index j = i + 1; j < n; ++j) k(j, i) = std::conj(k(i, j));
    }
    return k;
}

} // namespace sbar::test

#define CHECK_SBAR_ERROR(expr, expected_code)                                                                      \
    do {                                                                                                           \
        bool sbar_thrown_ = false;                                                                                 \
        try {                                                                                                      \
            (void)(expr);                                                                                          \
        } catch (const ::sbar::Error& e) {                                                                         \
            sbar_thrown_ = true;                                                                                   \
            CHECK_MESSAGE(e.code() == (expected_code), e.what());                                                  \
        }                                                                                                          \
        CHECK_MESSAGE(sbar_thrown_, #expr " did not throw");                                                       \
    } while (0)
