// midtune/num/matrix.cpp

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

#include "midtune/num/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "midtune/num/kernels.hpp"

namespace midtune::num {

bool all_finite(const Matrix& m) {
  for (double v : m.data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void matmul_into(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate) {
  if (a.cols != b.rows) {
    throw ShapeError("matmul: inner dimensions disagree (" +
                     std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                     " * " + std::to_string(b.rows) + "x" +
                     std::to_string(b.cols) + ")");
  }
  if (c.rows != a.rows || c.cols != b.cols) {
    throw ShapeError("matmul: result shape mismatch");
  }
  const KernelTable& k = active_kernels();
  const auto fn = accumulate ? k.matmul_acc : k.matmul;
  fn(a.data.data(), b.data.data(), c.data.data(),
     static_cast<std::size_t>(a.rows), static_cast<std::size_t>(a.cols),
     static_cast<std::size_t>(b.cols));
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.cols);
  matmul_into(a, b, c, /*accumulate=*/false);
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) {
      t(j, i) = a(i, j);
    }
  }
  return t;
}

Matrix softmax_rows(const Matrix& m) {
  Matrix out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    const double* x = m.row(i);
    double* y = out.row(i);
    double mx = x[0];
    for (int j = 1; j < m.cols; ++j) mx = std::max(mx, x[j]);
    double sum = 0.0;
    for (int j = 0; j < m.cols; ++j) {
      y[j] = std::exp(x[j] - mx);
      sum += y[j];
    }
    const double inv = 1.0 / sum;
    for (int j = 0; j < m.cols; ++j) y[j] *= inv;
  }
  return out;
}

double logsumexp_row(const double* x, int n) {
  double mx = x[0];
  for (int j = 1; j < n; ++j) mx = std::max(mx, x[j]);
  if (!std::isfinite(mx)) return mx;  // all -inf stays -inf
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += std::exp(x[j] - mx);
  return mx + std::log(sum);
}

Matrix log_softmax_rows(const Matrix& m) {
  Matrix out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    const double* x = m.row(i);
    double* y = out.row(i);
    const double lse = logsumexp_row(x, m.cols);
    for (int j = 0; j < m.cols; ++j) y[j] = x[j] - lse;
  }
  return out;
}

Matrix layer_norm(const Matrix& m, const Matrix& gain, const Matrix& bias,
                  double eps) {
  if (gain.cols != m.cols || bias.cols != m.cols || gain.rows != 1 ||
      bias.rows != 1) {
    throw ShapeError("layer_norm: gain/bias must be 1 x cols");
  }
  Matrix out(m.rows, m.cols);
  const double inv_n = 1.0 / m.cols;
  for (int i = 0; i < m.rows; ++i) {
    const double* x = m.row(i);
    double* y = out.row(i);
    double mean = 0.0;
    for (int j = 0; j < m.cols; ++j) mean += x[j];
    mean *= inv_n;
    double var = 0.0;
    for (int j = 0; j < m.cols; ++j) {
      const double d = x[j] - mean;
      var += d * d;
    }
    var *= inv_n;
    const double inv_std = 1.0 / std::sqrt(var + eps);
    for (int j = 0; j < m.cols; ++j) {
      y[j] = (x[j] - mean) * inv_std * gain.data[static_cast<std::size_t>(j)] +
             bias.data[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

void add_inplace(Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw ShapeError("add: shape mismatch");
  active_kernels().add(a.data.data(), b.data.data(), a.data.data(), a.size());
}

void axpy_inplace(double alpha, const Matrix& x, Matrix& y) {
  if (!x.same_shape(y)) throw ShapeError("axpy: shape mismatch");
  active_kernels().axpy(alpha, x.data.data(), y.data.data(), y.size());
}

void scale_inplace(double alpha, Matrix& m) {
  active_kernels().scale(alpha, m.data.data(), m.size());
}

}  // namespace midtune::num
