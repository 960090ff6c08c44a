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

#include <filesystem>
#include <string>

#include "sbar/channel.hpp"
#include "sbar/kernels.hpp"
#include "sbar/pilots.hpp"
#include "sbar/plan.hpp"

namespace sbar::io {

// Kernel and plan files come in two encodings carrying the same fields:
//   Binary  little-endian container, 8-byte magic "SBARKRN\0" / "SBARPLN\0", version 1
//   Json    UTF-8 JSON object with "format" = "sbar-kernel" / "sbar-plan", "version" = 1
// Loaders detect the encoding from the first byte. Port indices are 1-based on disk.
enum class FileFormat { Binary, Json };

// .json selects Json, anything else Binary.
FileFormat format_for_path(const std::filesystem::path& path);

inline constexpr int kFormatVersion = 1;

void save_kernel(const Kernel& kernel, const std::filesystem::path& path, FileFormat format);
void save_kernel(const Kernel& kernel, const std::filesystem::path& path);
Kernel load_kernel(const std::filesystem::path& path);

void save_plan(const SamplingPlan& plan, const std::filesystem::path& path, FileFormat format);
void save_plan(const SamplingPlan& plan, const std::filesystem::path& path);
SamplingPlan load_plan(const std::filesystem::path& path);

// JSON only.
void save_observation(const PilotObservation& y, const std::filesystem::path& path);
PilotObservation load_observation(const std::filesystem::path& path);

void save_channel(const ChannelRealization& h, const std::filesystem::path& path);
ChannelRealization load_channel(const std::filesystem::path& path);

void save_reconstruction(const Reconstruction& r, const std::filesystem::path& path);

// In-memory forms, used by the file functions and the tests.
std::string encode_kernel(const Kernel& kernel, FileFormat format);
Kernel decode_kernel(const std::string& bytes);
std::string encode_plan(const SamplingPlan& plan, FileFormat format);
SamplingPlan decode_plan(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

} // namespace sbar::io
