// midtune/num/gradcheck.hpp

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

#include <functional>
#include <string>

#include "midtune/num/optim.hpp"
#include "midtune/num/rng.hpp"

namespace midtune::num {

struct GradCheckReport {
  double max_rel_err = 0.0;
  int coords_checked = 0;
  bool failed_nonfinite = false;  // loss left the finite domain at a probe
  std::string worst_coord;
};

// Compares analytic gradients against central finite differences on
// `samples` randomly chosen parameter coordinates.
// rel err = |analytic - fd| / max(1e-8, |fd|). eps = 0 is a UsageError; a
// non-finite loss at a perturbed point marks the report failed.
GradCheckReport finite_diff_check(
    const std::function<double(const ParamStore&)>& loss_fn,
    const ParamStore& params, const ParamStore& analytic_grads, double eps,
    int samples, Rng& rng);

}  // namespace midtune::num
