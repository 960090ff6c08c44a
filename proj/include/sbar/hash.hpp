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

#include <bit>
#include <cstdint>
#include <string_view>

#include "sbar/types.hpp"

namespace sbar {

// 64-bit FNV-1a over little-endian encodings; used for kernel and plan fingerprints.
class Fnv1a {
public:
    void add_byte(std::uint8_t b) {
        h_ ^= b;
        h_ *= 0x100000001b3ULL;
    }
    void add_u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) add_byte(std::uint8_t(v >> (8 * i)));
    }
    void add_f64(double v) { add_u64(std::bit_cast<std::uint64_t>(v)); }
    void add_complex(Complex v) {
        add_f64(v.real());
        add_f64(v.imag());
    }
    void add_string(std::string_view s) {
        add_u64(s.size());
        for (char c : s) add_byte(std::uint8_t(c));
    }
    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

} // namespace sbar
