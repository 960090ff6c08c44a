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

// Complex double-precision vector primitives used by every hot loop:
//   axpy       y += a * x          (rank-one posterior downdate, dictionary synthesis)
//   axpy_conj  y += a * conj(x)    (online reconstruction h = w^H y)
//   dotc       sum conj(x) * y     (OMP correlations, norms)
//
// A scalar reference implementation always exists; vector variants are chosen at
// runtime from what the CPU reports, or forced with SBAR_SIMD=scalar|avx2|neon.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sbar::simd {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

struct OpTable {
    void (*axpy)(Complex a, const Complex* x, Complex* y, std::size_t n);
    void (*axpy_conj)(Complex a, const Complex* x, Complex* y, std::size_t n);
    Complex (*dotc)(const Complex* x, const Complex* y, std::size_t n);
};

// Table for one ISA, or nullptr when it was not compiled in or the CPU lacks it.
const OpTable* table_for(Isa isa);

std::vector<Isa> supported_isas();

Isa active_isa();

// Switches the process-wide table. Returns false (and changes nothing) if unsupported.
bool set_active_isa(Isa isa);

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
void axpy_conj(Complex a, std::span<const Complex> x, std::span<Complex> y);
Complex dotc(std::span<const Complex> x, std::span<const Complex> y);

namespace detail {
extern const OpTable kScalarTable;
const OpTable* avx2_table();
const OpTable* neon_table();
} // namespace detail

} // namespace sbar::simd
