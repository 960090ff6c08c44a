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

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// One __m256d holds two complex doubles laid out as [re0, im0, re1, im1].

namespace sbar::simd::detail {
namespace {

inline const double* as_double(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* as_double(Complex* p) { return reinterpret_cast<double*>(p); }

__attribute__((target("avx2,fma"))) void axpy_avx2(Complex a, const Complex* x, Complex* y,
                                                   std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const double* xp = as_double(x);
    double* yp = as_double(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d xs = _mm256_permute_pd(xv, 0b0101); // [im, re, im, re]
        // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), prod));
    }
    if (i < n) kScalarTable.axpy(a, x + i, y + i, n - i);
}

__attribute__((target("avx2,fma"))) void axpy_conj_avx2(Complex a, const Complex* x, Complex* y,
                                                        std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    const double* xp = as_double(x);
    double* yp = as_double(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_xor_pd(_mm256_loadu_pd(xp + 2 * i), conj_mask);
        const __m256d xs = _mm256_permute_pd(xv, 0b0101);
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), prod));
    }
    if (i < n) kScalarTable.axpy_conj(a, x + i, y + i, n - i);
}

__attribute__((target("avx2,fma"))) Complex dotc_avx2(const Complex* x, const Complex* y,
                                                      std::size_t n) {
    // direct accumulates [xr*yr, xi*yi], cross accumulates [xr*yi, xi*yr]
    __m256d direct = _mm256_setzero_pd();
    __m256d cross = _mm256_setzero_pd();
    const double* xp = as_double(x);
    const double* yp = as_double(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        direct = _mm256_fmadd_pd(xv, yv, direct);
        cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
    }
    alignas(32) double d[4];
    alignas(32) double c[4];
    _mm256_store_pd(d, direct);
    _mm256_store_pd(c, cross);
    Complex acc((d[0] + d[2]) + (d[1] + d[3]), (c[0] + c[2]) - (c[1] + c[3]));
    if (i < n) acc += kScalarTable.dotc(x + i, y + i, n - i);
    return acc;
}

const OpTable kAvx2Table{&axpy_avx2, &axpy_conj_avx2, &dotc_avx2};

} // namespace

const OpTable* avx2_table() {
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2Table;
    return nullptr;
}

} // namespace sbar::simd::detail

#else

namespace sbar::simd::detail {
const OpTable* avx2_table() { return nullptr; }
} // namespace sbar::simd::detail

#endif
