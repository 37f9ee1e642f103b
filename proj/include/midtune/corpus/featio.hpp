// midtune/corpus/featio.hpp

// Copyright 2026  midtune project contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>

#include "midtune/num/matrix.hpp"

namespace midtune::corpus {

// Feature file: little-endian, magic "FEAT", u32 version, u32 T, u32 F,
// then T*F f32 row-major. Storage is 32-bit; compute is 64-bit.
// Writes are atomic (temp file + rename).
void write_feat(const std::filesystem::path& path, const num::Matrix& feats);
num::Matrix read_feat(const std::filesystem::path& path);

inline constexpr std::uint32_t kFeatVersion = 1;

}  // namespace midtune::corpus
