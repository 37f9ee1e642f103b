// midtune/num/gradcheck.cpp

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

#include "midtune/num/gradcheck.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "midtune/util/errors.hpp"

namespace midtune::num {

GradCheckReport finite_diff_check(
    const std::function<double(const ParamStore&)>& loss_fn,
    const ParamStore& params, const ParamStore& analytic_grads, double eps,
    int samples, Rng& rng) {
  if (eps <= 0.0) throw UsageError("finite_diff_check: eps must be positive");
  if (samples <= 0) throw UsageError("finite_diff_check: samples must be positive");

  // Flat index over all coordinates, in name order.
  struct Entry {
    const std::string* name;
    std::size_t offset;
  };
  std::vector<Entry> coords;
  std::size_t total = 0;
  for (const auto& [name, p] : params) {
    (void)p;
    total += p.size();
  }
  GradCheckReport rep;
  ParamStore work = params;
  for (int s = 0; s < samples; ++s) {
    std::uint64_t flat = rng.bounded(total);
    // locate owning matrix
    auto it = params.begin();
    while (flat >= it->second.size()) {
      flat -= it->second.size();
      ++it;
    }
    const std::string& name = it->first;
    const std::size_t off = static_cast<std::size_t>(flat);

    Matrix& wp = work.at(name);
    const double orig = wp.data[off];
    wp.data[off] = orig + eps;
    const double lp = loss_fn(work);
    wp.data[off] = orig - eps;
    const double lm = loss_fn(work);
    wp.data[off] = orig;
    if (!std::isfinite(lp) || !std::isfinite(lm)) {
      rep.failed_nonfinite = true;
      rep.worst_coord = name;
      rep.max_rel_err = std::numeric_limits<double>::infinity();
      return rep;
    }
    const double fd = (lp - lm) / (2.0 * eps);
    const double an = analytic_grads.at(name).data[off];
    const double rel = std::abs(an - fd) / std::max(1e-8, std::abs(fd));
    ++rep.coords_checked;
    if (rel > rep.max_rel_err) {
      rep.max_rel_err = rel;
      rep.worst_coord = name + "[" + std::to_string(off) + "]";
    }
  }
  return rep;
}

}  // namespace midtune::num
