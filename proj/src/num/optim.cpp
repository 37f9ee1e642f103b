// midtune/num/optim.cpp

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

#include "midtune/num/optim.hpp"

#include <cmath>

namespace midtune::num {

AdamState AdamState::init(const ParamStore& params, AdamConfig cfg) {
  AdamState s;
  s.cfg = cfg;
  for (const auto& [name, p] : params) {
    s.m.emplace(name, Matrix(p.rows, p.cols));
    s.v.emplace(name, Matrix(p.rows, p.cols));
  }
  return s;
}

void adam_step(ParamStore& params, const ParamStore& grads, AdamState& state) {
  if (grads.size() != params.size()) {
    throw ShapeError("adam_step: parameter/gradient name sets differ");
  }
  state.step += 1;
  const double b1 = state.cfg.beta1;
  const double b2 = state.cfg.beta2;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  auto git = grads.begin();
  for (auto& [name, p] : params) {
    if (git == grads.end() || git->first != name) {
      throw ShapeError("adam_step: gradient missing for parameter " + name);
    }
    const Matrix& g = git->second;
    ++git;
    if (!p.same_shape(g)) {
      throw ShapeError("adam_step: shape mismatch for parameter " + name);
    }
    Matrix& m = state.m.at(name);
    Matrix& v = state.v.at(name);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double gi = g.data[i];
      m.data[i] = b1 * m.data[i] + (1.0 - b1) * gi;
      v.data[i] = b2 * v.data[i] + (1.0 - b2) * gi * gi;
      const double mhat = m.data[i] / bc1;
      const double vhat = v.data[i] / bc2;
      p.data[i] -= state.cfg.lr * mhat / (std::sqrt(vhat) + state.cfg.eps);
    }
  }
}

double grad_norm(const ParamStore& grads) {
  double sq = 0.0;
  for (const auto& [name, g] : grads) {
    (void)name;
    for (double v : g.data) sq += v * v;
  }
  return std::sqrt(sq);
}

double clip_grad_norm(ParamStore& grads, double max_norm) {
  const double norm = grad_norm(grads);
  if (max_norm > 0.0 && norm > max_norm) {
    const double s = max_norm / norm;
    for (auto& [name, g] : grads) {
      (void)name;
      scale_inplace(s, g);
    }
  }
  return norm;
}

}  // namespace midtune::num
