// midtune/num/tape.hpp

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
#include <memory>
#include <vector>

#include "midtune/num/matrix.hpp"

namespace midtune::num {

// Reverse-mode autodiff over a dynamically recorded operation tape.
// One tape per forward pass; node creation order is the topological order,
// so backward() is a single reverse sweep. Scalars are 1x1 matrices.
class Tape {
 public:
  struct Var {
    int idx = -1;
    bool valid() const { return idx >= 0; }
  };

  Var leaf(Matrix value);       // differentiable input (parameter)
  Var constant(Matrix value);   // non-differentiable input

  Var matmul(Var a, Var b);
  Var add(Var a, Var b);                 // same shape
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);                 // elementwise
  Var mul_const(Var a, Matrix mask);     // elementwise by a constant (dropout)
  Var scale(Var a, double c);
  Var transpose(Var a);
  Var relu(Var a);
  Var add_rowvec(Var m, Var row);        // m + row broadcast over rows
  Var mul_rowvec(Var m, Var row);        // m .* row broadcast over rows
  Var softmax_rows(Var a);
  Var log_softmax_rows(Var a);
  // Per-row standardization (population variance, eps under the sqrt).
  Var layer_norm_core(Var a, double eps);
  Var slice_cols(Var a, int c0, int c1);               // [c0, c1)
  Var concat_cols(const std::vector<Var>& parts);
  Var gather_rows(Var table, std::vector<int> ids);
  // Depthwise conv over time (rows), per-column taps, zero 'same' padding.
  // w is cols x kernel, b is 1 x cols.
  Var dwconv_time(Var a, Var w, Var b);
  Var row_sum(Var a);                    // n x c -> n x 1
  Var sum_all(Var a);                    // -> 1 x 1
  Var mean_all(Var a);                   // -> 1 x 1
  Var pick(Var a, std::vector<int> col_ids);  // out[i] = a(i, col_ids[i])

  // Extension point for losses with bespoke analytic gradients (CTC).
  // backward(tape, grad_out) runs during the reverse sweep and must
  // accumulate into grad_mut(parent) for differentiable parents.
  Var custom(Matrix value, std::vector<Var> parents,
             std::function<void(Tape&, const Matrix&)> backward);

  // Seeds d(root)/d(root) = seed and sweeps. Root must be scalar and finite;
  // UsageError otherwise. May be called once per tape.
  void backward(Var root, double seed = 1.0);

  const Matrix& value(Var v) const { return nodes_[static_cast<std::size_t>(v.idx)]->value; }
  // Zero matrix for nodes that do not require grad or were not reached.
  const Matrix& grad(Var v) const;
  Matrix& grad_mut(Var v);
  bool needs_grad(Var v) const { return nodes_[static_cast<std::size_t>(v.idx)]->needs_grad; }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;  // allocated iff needs_grad
    bool needs_grad = false;
    std::function<void(Tape&, const Matrix&)> backward;  // nullable
  };

  Var push(Matrix value, bool needs_grad,
           std::function<void(Tape&, const Matrix&)> backward);
  bool any_needs(std::initializer_list<Var> vars) const;

  std::vector<std::unique_ptr<Node>> nodes_;
  bool swept_ = false;
};

using Var = Tape::Var;

}  // namespace midtune::num
