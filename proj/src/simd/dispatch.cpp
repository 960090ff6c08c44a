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

#include <atomic>
#include <cstdlib>

#include "sbar/error.hpp"
#include "sbar/simd/ops.hpp"

namespace sbar::simd {

std::string_view to_string(Isa isa) {
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    }
    return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::Scalar;
    if (name == "avx2") return Isa::Avx2;
    if (name == "neon") return Isa::Neon;
    return std::nullopt;
}

const OpTable* table_for(Isa isa) {
    switch (isa) {
    case Isa::Scalar: return &detail::kScalarTable;
    case Isa::Avx2: return detail::avx2_table();
    case Isa::Neon: return detail::neon_table();
    }
    return nullptr;
}

std::vector<Isa> supported_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
        if (table_for(isa) != nullptr) out.push_back(isa);
    return out;
}

namespace {

Isa best_isa() {
    if (const char* env = std::getenv("SBAR_SIMD")) {
        const std::string_view requested(env);
        if (requested != "auto") {
            const auto isa = parse_isa(requested);
            if (!isa || table_for(*isa) == nullptr)
                throw Error(ErrorCode::InvalidArgument,
                            "SBAR_SIMD=" + std::string(requested) + " is not available on this CPU");
            return *isa;
        }
    }
    if (table_for(Isa::Avx2)) return Isa::Avx2;
    if (table_for(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

struct ActiveState {
    std::atomic<const OpTable*> table;
    std::atomic<Isa> isa;
    ActiveState() {
        const Isa chosen = best_isa();
        isa.store(chosen);
        table.store(table_for(chosen));
    }
};

ActiveState& state() {
    static ActiveState s;
    return s;
}

} // namespace

Isa active_isa() { return state().isa.load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) {
    const OpTable* t = table_for(isa);
    if (t == nullptr) return false;
    state().table.store(t);
    state().isa.store(isa);
    return true;
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "axpy operand lengths differ");
    state().table.load(std::memory_order_relaxed)->axpy(a, x.data(), y.data(), x.size());
}

void axpy_conj(Complex a, std::span<const Complex> x, std::span<Complex> y) {
    if (x.size() != y.size())
        throw Error(ErrorCode::LengthMismatch, "axpy_conj operand lengths differ");
    state().table.load(std::memory_order_relaxed)->axpy_conj(a, x.data(), y.data(), x.size());
}

Complex dotc(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "dotc operand lengths differ");
    return state().table.load(std::memory_order_relaxed)->dotc(x.data(), y.data(), x.size());
}

} // namespace sbar::simd
