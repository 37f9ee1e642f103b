// midtune/num/matrix.hpp

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

#include "midtune/util/errors.hpp"

namespace midtune::num {

// Dense row-major f64 matrix. Row vectors are 1 x n matrices.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {}

  static Matrix zeros_like(const Matrix& m) { return Matrix(m.rows, m.cols); }

  double& operator()(int r, int c) {
    return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
  }
  double operator()(int r, int c) const {
    return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
  }
  double* row(int r) { return data.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(cols); }
  const double* row(int r) const {
    return data.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(cols);
  }

  std::size_t size() const { return data.size(); }
  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

bool all_finite(const Matrix& m);

// c = a * b; ShapeError on inner-dimension mismatch.
Matrix matmul(const Matrix& a, const Matrix& b);
// c (+)= a * b into a preallocated result.
void matmul_into(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate);

Matrix transpose(const Matrix& a);

// Shift-stable row softmax: exp(x - rowmax) normalized per row.
Matrix softmax_rows(const Matrix& m);

// Row log-softmax: x - rowmax - log(sum exp(x - rowmax)).
Matrix log_softmax_rows(const Matrix& m);

// Per-row standardization followed by the affine (gain, bias), both 1 x cols.
// Variance is the population variance; eps sits under the square root.
Matrix layer_norm(const Matrix& m, const Matrix& gain, const Matrix& bias,
                  double eps);

void add_inplace(Matrix& a, const Matrix& b);
void axpy_inplace(double alpha, const Matrix& x, Matrix& y);
void scale_inplace(double alpha, Matrix& m);

double logsumexp_row(const double* x, int n);

}  // namespace midtune::num
