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

#include "sbar/simd/ops.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

// AArch64 always has Advanced SIMD; one float64x2_t holds one complex [re, im].

namespace sbar::simd::detail {
namespace {

inline const double* as_double(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* as_double(Complex* p) { return reinterpret_cast<double*>(p); }

void axpy_neon(Complex a, const Complex* x, Complex* y, std::size_t n) {
    const float64x2_t ar = vdupq_n_f64(a.real());
    // [-ai, ai] against the swapped [xi, xr] yields [-ai*xi, ai*xr]
    const float64x2_t ai = {-a.imag(), a.imag()};
    const double* xp = as_double(x);
    double* yp = as_double(y);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t xv = vld1q_f64(xp + 2 * i);
        const float64x2_t xs = vextq_f64(xv, xv, 1);
        float64x2_t acc = vld1q_f64(yp + 2 * i);
        acc = vfmaq_f64(acc, ar, xv);
        acc = vfmaq_f64(acc, ai, xs);
        vst1q_f64(yp + 2 * i, acc);
    }
}

void axpy_conj_neon(Complex a, const Complex* x, Complex* y, std::size_t n) {
    // a * conj(x) = [ar*xr + ai*xi, ai*xr - ar*xi]
    const float64x2_t ar = {a.real(), -a.real()};
    const float64x2_t ai = vdupq_n_f64(a.imag());
    const double* xp = as_double(x);
    double* yp = as_double(y);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t xv = vld1q_f64(xp + 2 * i);
        const float64x2_t xs = vextq_f64(xv, xv, 1);
        float64x2_t acc = vld1q_f64(yp + 2 * i);
        acc = vfmaq_f64(acc, ar, xv);
        acc = vfmaq_f64(acc, ai, xs);
        vst1q_f64(yp + 2 * i, acc);
    }
}

Complex dotc_neon(const Complex* x, const Complex* y, std::size_t n) {
    float64x2_t direct = vdupq_n_f64(0.0);
    float64x2_t cross = vdupq_n_f64(0.0);
    const double* xp = as_double(x);
    const double* yp = as_double(y);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t xv = vld1q_f64(xp + 2 * i);
        const float64x2_t yv = vld1q_f64(yp + 2 * i);
        direct = vfmaq_f64(direct, xv, yv);
        cross = vfmaq_f64(cross, xv, vextq_f64(yv, yv, 1));
    }
    return {vgetq_lane_f64(direct, 0) + vgetq_lane_f64(direct, 1),
            vgetq_lane_f64(cross, 0) - vgetq_lane_f64(cross, 1)};
}

const OpTable kNeonTable{&axpy_neon, &axpy_conj_neon, &dotc_neon};

} // namespace

const OpTable* neon_table() { return &kNeonTable; }

} // namespace sbar::simd::detail

#else

namespace sbar::simd::detail {
const OpTable* neon_table() { return nullptr; }
} // namespace sbar::simd::detail

#endif
