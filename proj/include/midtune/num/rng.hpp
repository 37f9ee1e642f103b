// midtune/num/rng.hpp

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

#include <cstdint>
#include <random>
#include <string_view>

namespace midtune::num {

// Deterministic RNG. mt19937_64 output is bit-exact per the C++ standard;
// the distribution transforms below are hand-rolled because the std
// distribution objects are implementation-defined and would break bitwise
// reproducibility across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n), Lemire's multiply-shift rejection.
  std::uint64_t bounded(std::uint64_t n);

  int uniform_int(int n) { return static_cast<int>(bounded(static_cast<std::uint64_t>(n))); }

  bool bernoulli(double p) { return uniform() < p; }

  // N(0, 1) via Box-Muller, spare value cached.
  double normal();

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Named sub-stream derivation: SHA-256("<master-decimal>/<stream>"), first 8
// bytes read little-endian. Every consumer of randomness inside a run pulls
// from a stream with a unique name, so streams never alias.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream);

inline Rng derive_rng(std::uint64_t master, std::string_view stream) {
  return Rng(derive_seed(master, stream));
}

}  // namespace midtune::num
