// midtune/num/kernels_dispatch.cpp

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

#include <vector>

#include "midtune/num/kernels.hpp"
#include "midtune/util/errors.hpp"

namespace midtune::num {
namespace {

bool cpu_has_avx2_fma() {
#if defined(MIDTUNE_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return &scalar_kernels();
#if defined(MIDTUNE_HAVE_AVX2)
    case SimdLevel::kAvx2:
      return &avx2_kernels();
#endif
#if defined(MIDTUNE_HAVE_NEON)
    case SimdLevel::kNeon:
      return &neon_kernels();
#endif
    default:
      return nullptr;
  }
}

SimdLevel best_level() {
#if defined(MIDTUNE_HAVE_NEON)
  return SimdLevel::kNeon;
#else
  if (cpu_has_avx2_fma()) return SimdLevel::kAvx2;
  return SimdLevel::kScalar;
#endif
}

SimdLevel& current_level() {
  static SimdLevel level = best_level();
  return level;
}

}  // namespace

const char* simd_level_name(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return "scalar";
    case SimdLevel::kAvx2:
      return "avx2";
    case SimdLevel::kNeon:
      return "neon";
  }
  return "?";
}

std::vector<SimdLevel> supported_simd_levels() {
  std::vector<SimdLevel> out{SimdLevel::kScalar};
#if defined(MIDTUNE_HAVE_NEON)
  out.push_back(SimdLevel::kNeon);
#endif
  if (cpu_has_avx2_fma()) out.push_back(SimdLevel::kAvx2);
  return out;
}

const KernelTable& active_kernels() { return *table_for(current_level()); }

SimdLevel active_simd_level() { return current_level(); }

void set_simd_level(SimdLevel level) {
  if (level != SimdLevel::kScalar) {
    bool ok = false;
    for (SimdLevel s : supported_simd_levels()) ok = ok || (s == level);
    if (!ok) {
      throw ConfigError(std::string("simd level not supported on this cpu: ") +
                        simd_level_name(level));
    }
  }
  current_level() = level;
}

}  // namespace midtune::num
