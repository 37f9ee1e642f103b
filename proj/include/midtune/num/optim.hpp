// midtune/num/optim.hpp

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
#include <map>
#include <string>

#include "midtune/num/matrix.hpp"

namespace midtune::num {

// Named parameters; std::map gives the lexicographic iteration order the
// deterministic init/update paths rely on.
using ParamStore = std::map<std::string, Matrix>;

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamConfig cfg;
  std::int64_t step = 0;
  std::map<std::string, Matrix> m;  // first moments
  std::map<std::string, Matrix> v;  // second moments

  static AdamState init(const ParamStore& params, AdamConfig cfg);
};

// Bias-corrected Adam update in place. Grads must have exactly the same
// names and shapes as params (ShapeError otherwise).
void adam_step(ParamStore& params, const ParamStore& grads, AdamState& state);

// Global L2 gradient-norm clipping; returns the pre-clip norm.
double clip_grad_norm(ParamStore& grads, double max_norm);

double grad_norm(const ParamStore& grads);

}  // namespace midtune::num
