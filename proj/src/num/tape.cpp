// midtune/num/tape.cpp

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

#include "midtune/num/tape.hpp"

#include <cmath>
#include <utility>

#include "midtune/num/kernels.hpp"

namespace midtune::num {

namespace {
const Matrix kEmpty;
}

Var Tape::push(Matrix value, bool needs_grad,
               std::function<void(Tape&, const Matrix&)> backward) {
  auto node = std::make_unique<Node>();
  node->value = std::move(value);
  node->needs_grad = needs_grad;
  if (needs_grad) {
    node->grad = Matrix(node->value.rows, node->value.cols);
    node->backward = std::move(backward);
  }
  nodes_.push_back(std::move(node));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

bool Tape::any_needs(std::initializer_list<Var> vars) const {
  for (Var v : vars) {
    if (v.valid() && nodes_[static_cast<std::size_t>(v.idx)]->needs_grad) return true;
  }
  return false;
}

const Matrix& Tape::grad(Var v) const {
  const Node& n = *nodes_[static_cast<std::size_t>(v.idx)];
  return n.needs_grad ? n.grad : kEmpty;
}

Matrix& Tape::grad_mut(Var v) {
  return nodes_[static_cast<std::size_t>(v.idx)]->grad;
}

Var Tape::leaf(Matrix value) { return push(std::move(value), true, nullptr); }

Var Tape::constant(Matrix value) { return push(std::move(value), false, nullptr); }

Var Tape::matmul(Var a, Var b) {
  const Matrix& va = value(a);
  const Matrix& vb = value(b);
  Matrix out = num::matmul(va, vb);
  if (!any_needs({a, b})) return constant(std::move(out));
  return push(std::move(out), true, [a, b](Tape& t, const Matrix& g) {
    if (t.needs_grad(a)) {
      Matrix bt = num::transpose(t.value(b));
      matmul_into(g, bt, t.grad_mut(a), /*accumulate=*/true);
    }
    if (t.needs_grad(b)) {
      Matrix at = num::transpose(t.value(a));
      matmul_into(at, g, t.grad_mut(b), /*accumulate=*/true);
    }
  });
}

Var Tape::add(Var a, Var b) {
  const Matrix& va = value(a);
  const Matrix& vb = value(b);
  if (!va.same_shape(vb)) throw ShapeError("tape add: shape mismatch");
  Matrix out(va.rows, va.cols);
  active_kernels().add(va.data.data(), vb.data.data(), out.data.data(), out.size());
  if (!any_needs({a, b})) return constant(std::move(out));
  return push(std::move(out), true, [a, b](Tape& t, const Matrix& g) {
    if (t.needs_grad(a)) axpy_inplace(1.0, g, t.grad_mut(a));
    if (t.needs_grad(b)) axpy_inplace(1.0, g, t.grad_mut(b));
  });
}

Var Tape::sub(Var a, Var b) {
  const Matrix& va = value(a);
  const Matrix& vb = value(b);
  if (!va.same_shape(vb)) throw ShapeError("tape sub: shape mismatch");
  Matrix out(va.rows, va.cols);
  active_kernels().sub(va.data.data(), vb.data.data(), out.data.data(), out.size());
  if (!any_needs({a, b})) return constant(std::move(out));
  return push(std::move(out), true, [a, b](Tape& t, const Matrix& g) {
    if (t.needs_grad(a)) axpy_inplace(1.0, g, t.grad_mut(a));
    if (t.needs_grad(b)) axpy_inplace(-1.0, g, t.grad_mut(b));
  });
}

Var Tape::mul(Var a, Var b) {
  const Matrix& va = value(a);
  const Matrix& vb = value(b);
  if (!va.same_shape(vb)) throw ShapeError("tape mul: shape mismatch");
  Matrix out(va.rows, va.cols);
  active_kernels().mul(va.data.data(), vb.data.data(), out.data.data(), out.size());
  if (!any_needs({a, b})) return constant(std::move(out));
  return push(std::move(out), true, [a, b](Tape& t, const Matrix& g) {
    const KernelTable& k = active_kernels();
    if (t.needs_grad(a)) {
      Matrix tmp(g.rows, g.cols);
      k.mul(g.data.data(), t.value(b).data.data(), tmp.data.data(), tmp.size());
      axpy_inplace(1.0, tmp, t.grad_mut(a));
    }
    if (t.needs_grad(b)) {
      Matrix tmp(g.rows, g.cols);
      k.mul(g.data.data(), t.value(a).data.data(), tmp.data.data(), tmp.size());
      axpy_inplace(1.0, tmp, t.grad_mut(b));
    }
  });
}

Var Tape::mul_const(Var a, Matrix mask) {
  const Matrix& va = value(a);
  if (!va.same_shape(mask)) throw ShapeError("tape mul_const: shape mismatch");
  Matrix out(va.rows, va.cols);
  active_kernels().mul(va.data.data(), mask.data.data(), out.data.data(), out.size());
  if (!any_needs({a})) return constant(std::move(out));
  auto m = std::make_shared<Matrix>(std::move(mask));
  return push(std::move(out), true, [a, m](Tape& t, const Matrix& g) {
    Matrix tmp(g.rows, g.cols);
    active_kernels().mul(g.data.data(), m->data.data(), tmp.data.data(), tmp.size());
    axpy_inplace(1.0, tmp, t.grad_mut(a));
  });
}

Var Tape::scale(Var a, double c) {
  Matrix out = value(a);
  scale_inplace(c, out);
  if (!any_needs({a})) return constant(std::move(out));
  return push(std::move(out), true, [a, c](Tape& t, const Matrix& g) {
    axpy_inplace(c, g, t.grad_mut(a));
  });
}

Var Tape::transpose(Var a) {
  Matrix out = num::transpose(value(a));
  if (!any_needs({a})) return constant(std::move(out));
  return push(std::move(out), true, [a](Tape& t, const Matrix& g) {
    Matrix gt = num::transpose(g);
    axpy_inplace(1.0, gt, t.grad_mut(a));
  });
}

Var Tape::relu(Var a) {
  Matrix out = value(a);
  for (double& v : out.data) v = v > 0.0 ? v : 0.0;
  if (!any_needs({a})) return constant(std::move(out));
  return push(std::move(out), true, [a](Tape& t, const Matrix& g) {
    const Matrix& x = t.value(a);
    Matrix& ga = t.grad_mut(a);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x.data[i] > 0.0) ga.data[i] += g.data[i];
    }
  });
}

Var Tape::add_rowvec(Var m, Var row) {
  const Matrix& vm = value(m);
  const Matrix& vr = value(row);
  if (vr.rows != 1 || vr.cols != vm.cols) {
    throw ShapeError("add_rowvec: row must be 1 x cols");
  }
  Matrix out(vm.rows, vm.cols);
  for (int i = 0; i < vm.rows; ++i) {
    active_kernels().add(vm.row(i), vr.data.data(), out.row(i),
                         static_cast<std::size_t>(vm.cols));
  }
  if (!any_needs({m, row})) return constant(std::move(out));
  return push(std::move(out), true, [m, row](Tape& t, const Matrix& g) {
    if (t.needs_grad(m)) axpy_inplace(1.0, g, t.grad_mut(m));
    if (t.needs_grad(row)) {
      Matrix& gr = t.grad_mut(row);
      for (int i = 0; i < g.rows; ++i) {
        active_kernels().axpy(1.0, g.row(i), gr.data.data(),
                              static_cast<std::size_t>(g.cols));
      }
    }
  });
}

Var Tape::mul_rowvec(Var m, Var row) {
  const Matrix& vm = value(m);
  const Matrix& vr = value(row);
  if (vr.rows != 1 || vr.cols != vm.cols) {
    throw ShapeError("mul_rowvec: row must be 1 x cols");
  }
  Matrix out(vm.rows, vm.cols);
  for (int i = 0; i < vm.rows; ++i) {
    active_kernels().mul(vm.row(i), vr.data.data(), out.row(i),
                         static_cast<std::size_t>(vm.cols));
  }
  if (!any_needs({m, row})) return constant(std::move(out));
  return push(std::move(out), true, [m, row](Tape& t, const Matrix& g) {
    if (t.needs_grad(m)) {
      Matrix& gm = t.grad_mut(m);
      const Matrix& vr2 = t.value(row);
      for (int i = 0; i < g.rows; ++i) {
        for (int j = 0; j < g.cols; ++j) {
          gm(i, j) += g(i, j) * vr2.data[static_cast<std::size_t>(j)];
        }
      }
    }
    if (t.needs_grad(row)) {
      Matrix& gr = t.grad_mut(row);
      const Matrix& vm2 = t.value(m);
      for (int i = 0; i < g.rows; ++i) {
        for (int j = 0; j < g.cols; ++j) {
          gr.data[static_cast<std::size_t>(j)] += g(i, j) * vm2(i, j);
        }
      }
    }
  });
}

Var Tape::softmax_rows(Var a) {
  Matrix out = num::softmax_rows(value(a));
  if (!any_needs({a})) return constant(std::move(out));
  Var v = push(std::move(out), true, nullptr);
  nodes_.back()->backward = [a, v](Tape& t, const Matrix& g) {
    const Matrix& y = t.value(v);
    Matrix& ga = t.grad_mut(a);
    for (int i = 0; i < y.rows; ++i) {
      const double* yr = y.row(i);
      const double* gr = g.row(i);
      double dotv = 0.0;
      for (int j = 0; j < y.cols; ++j) dotv += yr[j] * gr[j];
      double* gar = ga.row(i);
      for (int j = 0; j < y.cols; ++j) gar[j] += yr[j] * (gr[j] - dotv);
    }
  };
  return v;
}

Var Tape::log_softmax_rows(Var a) {
  Matrix out = num::log_softmax_rows(value(a));
  if (!any_needs({a})) return constant(std::move(out));
  Var v = push(std::move(out), true, nullptr);
  nodes_.back()->backward = [a, v](Tape& t, const Matrix& g) {
    const Matrix& y = t.value(v);
    Matrix& ga = t.grad_mut(a);
    for (int i = 0; i < y.rows; ++i) {
      const double* yr = y.row(i);
      const double* gr = g.row(i);
      double gsum = 0.0;
      for (int j = 0; j < y.cols; ++j) gsum += gr[j];
      double* gar = ga.row(i);
      for (int j = 0; j < y.cols; ++j) {
        gar[j] += gr[j] - std::exp(yr[j]) * gsum;
      }
    }
  };
  return v;
}

Var Tape::layer_norm_core(Var a, double eps) {
  const Matrix& x = value(a);
  Matrix out(x.rows, x.cols);
  auto inv_std = std::make_shared<std::vector<double>>(
      static_cast<std::size_t>(x.rows));
  const double inv_n = 1.0 / x.cols;
  for (int i = 0; i < x.rows; ++i) {
    const double* xr = x.row(i);
    double mean = 0.0;
    for (int j = 0; j < x.cols; ++j) mean += xr[j];
    mean *= inv_n;
    double var = 0.0;
    for (int j = 0; j < x.cols; ++j) {
      const double d = xr[j] - mean;
      var += d * d;
    }
    var *= inv_n;
    const double is = 1.0 / std::sqrt(var + eps);
    (*inv_std)[static_cast<std::size_t>(i)] = is;
    double* yr = out.row(i);
    for (int j = 0; j < x.cols; ++j) yr[j] = (xr[j] - mean) * is;
  }
  if (!any_needs({a})) return constant(std::move(out));
  Var v = push(std::move(out), true, nullptr);
  nodes_.back()->backward = [a, v, inv_std](Tape& t, const Matrix& g) {
    const Matrix& y = t.value(v);
    Matrix& ga = t.grad_mut(a);
    const double inv_n2 = 1.0 / y.cols;
    for (int i = 0; i < y.rows; ++i) {
      const double* yr = y.row(i);
      const double* gr = g.row(i);
      double gmean = 0.0;
      double gymean = 0.0;
      for (int j = 0; j < y.cols; ++j) {
        gmean += gr[j];
        gymean += gr[j] * yr[j];
      }
      gmean *= inv_n2;
      gymean *= inv_n2;
      const double is = (*inv_std)[static_cast<std::size_t>(i)];
      double* gar = ga.row(i);
      for (int j = 0; j < y.cols; ++j) {
        gar[j] += is * (gr[j] - gmean - yr[j] * gymean);
      }
    }
  };
  return v;
}

Var Tape::slice_cols(Var a, int c0, int c1) {
  const Matrix& x = value(a);
  if (c0 < 0 || c1 > x.cols || c0 >= c1) throw ShapeError("slice_cols: bad range");
  Matrix out(x.rows, c1 - c0);
  for (int i = 0; i < x.rows; ++i) {
    const double* xr = x.row(i);
    double* yr = out.row(i);
    for (int j = c0; j < c1; ++j) yr[j - c0] = xr[j];
  }
  if (!any_needs({a})) return constant(std::move(out));
  return push(std::move(out), true, [a, c0](Tape& t, const Matrix& g) {
    Matrix& ga = t.grad_mut(a);
    for (int i = 0; i < g.rows; ++i) {
      const double* gr = g.row(i);
      double* gar = ga.row(i);
      for (int j = 0; j < g.cols; ++j) gar[c0 + j] += gr[j];
    }
  });
}

Var Tape::concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("concat_cols: empty");
  int total = 0;
  const int rows = value(parts[0]).rows;
  for (Var p : parts) {
    if (value(p).rows != rows) throw ShapeError("concat_cols: row mismatch");
    total += value(p).cols;
  }
  Matrix out(rows, total);
  int off = 0;
  for (Var p : parts) {
    const Matrix& x = value(p);
    for (int i = 0; i < rows; ++i) {
      double* yr = out.row(i);
      const double* xr = x.row(i);
      for (int j = 0; j < x.cols; ++j) yr[off + j] = xr[j];
    }
    off += x.cols;
  }
  bool needs = false;
  for (Var p : parts) needs = needs || this->needs_grad(p);
  if (!needs) return constant(std::move(out));
  auto parts_copy = std::make_shared<std::vector<Var>>(parts);
  return push(std::move(out), true, [parts_copy](Tape& t, const Matrix& g) {
    int off2 = 0;
    for (Var p : *parts_copy) {
      const int c = t.value(p).cols;
      if (t.needs_grad(p)) {
        Matrix& gp = t.grad_mut(p);
        for (int i = 0; i < g.rows; ++i) {
          const double* gr = g.row(i);
          double* gpr = gp.row(i);
          for (int j = 0; j < c; ++j) gpr[j] += gr[off2 + j];
        }
      }
      off2 += c;
    }
  });
}

Var Tape::gather_rows(Var table, std::vector<int> ids) {
  const Matrix& x = value(table);
  Matrix out(static_cast<int>(ids.size()), x.cols);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const int r = ids[i];
    if (r < 0 || r >= x.rows) throw UsageError("gather_rows: index out of range");
    const double* xr = x.row(r);
    double* yr = out.row(static_cast<int>(i));
    for (int j = 0; j < x.cols; ++j) yr[j] = xr[j];
  }
  if (!any_needs({table})) return constant(std::move(out));
  auto ids_copy = std::make_shared<std::vector<int>>(std::move(ids));
  return push(std::move(out), true, [table, ids_copy](Tape& t, const Matrix& g) {
    Matrix& gt = t.grad_mut(table);
    for (std::size_t i = 0; i < ids_copy->size(); ++i) {
      active_kernels().axpy(1.0, g.row(static_cast<int>(i)),
                            gt.row((*ids_copy)[i]),
                            static_cast<std::size_t>(g.cols));
    }
  });
}

Var Tape::dwconv_time(Var a, Var w, Var b) {
  const Matrix& x = value(a);
  const Matrix& vw = value(w);
  const Matrix& vb = value(b);
  if (vw.rows != x.cols) throw ShapeError("dwconv_time: w must be cols x kernel");
  if (vb.rows != 1 || vb.cols != x.cols) throw ShapeError("dwconv_time: bad bias");
  const int kern = vw.cols;
  const int off = kern / 2;
  Matrix out(x.rows, x.cols);
  for (int t0 = 0; t0 < x.rows; ++t0) {
    double* yr = out.row(t0);
    for (int c = 0; c < x.cols; ++c) {
      double s = vb.data[static_cast<std::size_t>(c)];
      for (int j = 0; j < kern; ++j) {
        const int src = t0 + j - off;
        if (src >= 0 && src < x.rows) s += vw(c, j) * x(src, c);
      }
      yr[c] = s;
    }
  }
  if (!any_needs({a, w, b})) return constant(std::move(out));
  return push(std::move(out), true, [a, w, b, kern, off](Tape& t, const Matrix& g) {
    const Matrix& x2 = t.value(a);
    const Matrix& vw2 = t.value(w);
    if (t.needs_grad(a)) {
      Matrix& ga = t.grad_mut(a);
      for (int t0 = 0; t0 < g.rows; ++t0) {
        const double* gr = g.row(t0);
        for (int j = 0; j < kern; ++j) {
          const int src = t0 + j - off;
          if (src < 0 || src >= g.rows) continue;
          double* gar = ga.row(src);
          for (int c = 0; c < g.cols; ++c) gar[c] += vw2(c, j) * gr[c];
        }
      }
    }
    if (t.needs_grad(w)) {
      Matrix& gw = t.grad_mut(w);
      for (int t0 = 0; t0 < g.rows; ++t0) {
        const double* gr = g.row(t0);
        for (int j = 0; j < kern; ++j) {
          const int src = t0 + j - off;
          if (src < 0 || src >= g.rows) continue;
          const double* xr = x2.row(src);
          for (int c = 0; c < g.cols; ++c) gw(c, j) += xr[c] * gr[c];
        }
      }
    }
    if (t.needs_grad(b)) {
      Matrix& gb = t.grad_mut(b);
      for (int t0 = 0; t0 < g.rows; ++t0) {
        active_kernels().axpy(1.0, g.row(t0), gb.data.data(),
                              static_cast<std::size_t>(g.cols));
      }
    }
  });
}

Var Tape::row_sum(Var a) {
  const Matrix& x = value(a);
  Matrix out(x.rows, 1);
  for (int i = 0; i < x.rows; ++i) {
    double s = 0.0;
    const double* xr = x.row(i);
    for (int j = 0; j < x.cols; ++j) s += xr[j];
    out(i, 0) = s;
  }
  if (!any_needs({a})) return constant(std::move(out));
  return push(std::move(out), true, [a](Tape& t, const Matrix& g) {
    Matrix& ga = t.grad_mut(a);
    for (int i = 0; i < ga.rows; ++i) {
      const double gi = g(i, 0);
      double* gar = ga.row(i);
      for (int j = 0; j < ga.cols; ++j) gar[j] += gi;
    }
  });
}

Var Tape::sum_all(Var a) {
  const Matrix& x = value(a);
  double s = 0.0;
  for (double v : x.data) s += v;
  Matrix out(1, 1);
  out(0, 0) = s;
  if (!any_needs({a})) return constant(std::move(out));
  return push(std::move(out), true, [a](Tape& t, const Matrix& g) {
    Matrix& ga = t.grad_mut(a);
    const double g0 = g(0, 0);
    for (double& v : ga.data) v += g0;
  });
}

Var Tape::mean_all(Var a) {
  const Matrix& x = value(a);
  return scale(sum_all(a), 1.0 / static_cast<double>(x.size()));
}

Var Tape::pick(Var a, std::vector<int> col_ids) {
  const Matrix& x = value(a);
  if (static_cast<int>(col_ids.size()) != x.rows) {
    throw ShapeError("pick: one index per row required");
  }
  Matrix out(x.rows, 1);
  for (int i = 0; i < x.rows; ++i) {
    const int c = col_ids[static_cast<std::size_t>(i)];
    if (c < 0 || c >= x.cols) throw UsageError("pick: column out of range");
    out(i, 0) = x(i, c);
  }
  if (!any_needs({a})) return constant(std::move(out));
  auto ids = std::make_shared<std::vector<int>>(std::move(col_ids));
  return push(std::move(out), true, [a, ids](Tape& t, const Matrix& g) {
    Matrix& ga = t.grad_mut(a);
    for (int i = 0; i < ga.rows; ++i) {
      ga(i, (*ids)[static_cast<std::size_t>(i)]) += g(i, 0);
    }
  });
}

Var Tape::custom(Matrix value, std::vector<Var> parents,
                 std::function<void(Tape&, const Matrix&)> backward) {
  bool needs = false;
  for (Var p : parents) needs = needs || needs_grad(p);
  if (!needs) return constant(std::move(value));
  return push(std::move(value), true, std::move(backward));
}

void Tape::backward(Var root, double seed) {
  const Matrix& rv = value(root);
  if (rv.rows != 1 || rv.cols != 1) {
    throw UsageError("backward: root must be a scalar (1x1)");
  }
  if (!std::isfinite(rv(0, 0))) {
    throw UsageError("backward: root is not finite");
  }
  if (swept_) throw UsageError("backward: tape already swept");
  swept_ = true;
  Node& rn = *nodes_[static_cast<std::size_t>(root.idx)];
  if (!rn.needs_grad) return;  // no parameters reachable
  rn.grad(0, 0) = seed;
  for (int i = root.idx; i >= 0; --i) {
    Node& n = *nodes_[static_cast<std::size_t>(i)];
    if (n.needs_grad && n.backward) n.backward(*this, n.grad);
  }
}

}  // namespace midtune::num
