// midtune/num/kernels.hpp

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

#include <cstddef>
#include <vector>

namespace midtune::num {

// Data-parallel f64 inner loops. Scalar versions are the reference semantics;
// SIMD variants are selected once at startup from CPU capabilities and must
// agree with the reference within summation-reordering tolerance (see
// tests/test_kernels.cpp). Row-major everywhere.
struct KernelTable {
  const char* name;

  // c = a(m x k) * b(k x n)
  void (*matmul)(const double* a, const double* b, double* c, std::size_t m,
                 std::size_t k, std::size_t n);
  // c += a(m x k) * b(k x n)
  void (*matmul_acc)(const double* a, const double* b, double* c,
                     std::size_t m, std::size_t k, std::size_t n);
  // out = a + b
  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  // out = a - b
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  // out = a .* b
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
};

enum class SimdLevel { kScalar = 0, kAvx2 = 1, kNeon = 2 };

const char* simd_level_name(SimdLevel level);

const KernelTable& scalar_kernels();

// Levels usable on this CPU (always contains kScalar).
std::vector<SimdLevel> supported_simd_levels();

// Active table; defaults to the best supported level on first use.
const KernelTable& active_kernels();
SimdLevel active_simd_level();

// Force a level (tests / --simd flag). Throws ConfigError if unsupported.
void set_simd_level(SimdLevel level);

#if defined(MIDTUNE_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(MIDTUNE_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

}  // namespace midtune::num
