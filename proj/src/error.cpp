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

#include "sbar/error.hpp"

namespace sbar {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::LengthMismatch: return "length-mismatch";
    case ErrorCode::DuplicateIndex: return "duplicate-index";
    case ErrorCode::IndexAlreadyMeasured: return "index-already-measured";
    case ErrorCode::NonpositiveDenominator: return "nonpositive-denominator";
    case ErrorCode::PlanTooLarge: return "plan-too-large";
    case ErrorCode::SingularSystem: return "singular-system";
    case ErrorCode::EmptyTrainingSet: return "empty-training-set";
    case ErrorCode::FingerprintMismatch: return "fingerprint-mismatch";
    case ErrorCode::NoisePowerMismatch: return "noise-power-mismatch";
    case ErrorCode::ZeroNormTruth: return "zero-norm-truth";
    case ErrorCode::EmptyRecordSet: return "empty-record-set";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::Io: return "io";
    case ErrorCode::Format: return "format";
    }
    return "unknown";
}

} // namespace sbar
