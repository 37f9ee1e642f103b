// numcore: matrices, autodiff tape, Adam, finite differences, rng streams.

#include <cmath>
#include <limits>

#include "doctest.h"
#include "midtune/num/gradcheck.hpp"
#include "midtune/num/matrix.hpp"
#include "midtune/num/optim.hpp"
#include "midtune/num/rng.hpp"
#include "midtune/num/tape.hpp"

using namespace midtune;
using namespace midtune::num;

namespace {

Matrix random_matrix(Rng& rng, int r, int c, double lo = -1.0, double hi = 1.0) {
  Matrix m(r, c);
  for (double& v : m.data) v = rng.uniform(lo, hi);
  return m;
}

// Independent oracle: naive triple loop.
Matrix matmul_triple_loop(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      double s = 0.0;
      for (int p = 0; p < a.cols; ++p) s += a(i, p) * b(p, j);
      c(i, j) = s;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("matmul basics") {
  Rng rng(1);
  Matrix a = random_matrix(rng, 3, 3);
  Matrix eye(3, 3);
  for (int i = 0; i < 3; ++i) eye(i, i) = 1.0;
  Matrix ai = matmul(a, eye);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(ai.data[i] == doctest::Approx(a.data[i]).epsilon(1e-15));
  }

  Matrix two(1, 1);
  two(0, 0) = 2.0;
  Matrix three(1, 1);
  three(0, 0) = 3.0;
  CHECK(matmul(two, three)(0, 0) == doctest::Approx(6.0));

  Matrix x = random_matrix(rng, 3, 4);
  Matrix y = random_matrix(rng, 4, 2);
  Matrix got = matmul(x, y);
  Matrix want = matmul_triple_loop(x, y);
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(std::abs(got.data[i] - want.data[i]) < 1e-12);
  }

  CHECK_THROWS_AS(matmul(x, x), ShapeError);
}

TEST_CASE("matmul is deterministic bitwise") {
  Rng rng(7);
  Matrix a = random_matrix(rng, 5, 9);
  Matrix b = random_matrix(rng, 9, 4);
  Matrix c1 = matmul(a, b);
  Matrix c2 = matmul(a, b);
  CHECK(c1.data == c2.data);
}

TEST_CASE("softmax_rows") {
  Matrix m(1, 3);
  Matrix s = softmax_rows(m);
  for (int j = 0; j < 3; ++j) CHECK(s(0, j) == doctest::Approx(1.0 / 3));

  // [c, c+ln 2] -> [1/3, 2/3] for any c
  for (double c : {-40.0, 0.0, 3.5, 1000.0}) {
    Matrix r(1, 2);
    r(0, 0) = c;
    r(0, 1) = c + std::log(2.0);
    Matrix sr = softmax_rows(r);
    CHECK(sr(0, 0) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(sr(0, 1) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  }

  // shift invariance
  Rng rng(2);
  Matrix x = random_matrix(rng, 4, 6, -5.0, 5.0);
  Matrix xs = x;
  for (double& v : xs.data) v += 1000.0;
  Matrix s1 = softmax_rows(x);
  Matrix s2 = softmax_rows(xs);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(std::abs(s1.data[i] - s2.data[i]) < 1e-12);
  }

  // property: rows sum to 1 within 1e-12
  for (int trial = 0; trial < 50; ++trial) {
    Matrix p = random_matrix(rng, 1 + rng.uniform_int(6), 1 + rng.uniform_int(9),
                             -30.0, 30.0);
    Matrix sp = softmax_rows(p);
    for (int i = 0; i < sp.rows; ++i) {
      double sum = 0.0;
      for (int j = 0; j < sp.cols; ++j) {
        CHECK(sp(i, j) >= 0.0);
        sum += sp(i, j);
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("layer_norm") {
  const double eps = 1e-10;
  Matrix ones_row(1, 4, 3.7);  // constant row
  Matrix gain(1, 4, 1.0);
  Matrix bias(1, 4, 0.0);
  Matrix out = layer_norm(ones_row, gain, bias, eps);
  for (int j = 0; j < 4; ++j) CHECK(out(0, j) == doctest::Approx(0.0));

  Matrix pm(1, 2);
  pm(0, 0) = 1.0;
  pm(0, 1) = -1.0;
  Matrix g2(1, 2, 1.0);
  Matrix b2(1, 2, 0.0);
  Matrix o2 = layer_norm(pm, g2, b2, 1e-12);
  CHECK(o2(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(o2(0, 1) == doctest::Approx(-1.0).epsilon(1e-6));

  // gain 0 -> every entry bias
  Rng rng(3);
  Matrix x = random_matrix(rng, 3, 5);
  Matrix g0(1, 5, 0.0);
  Matrix bb(1, 5, 0.42);
  Matrix ob = layer_norm(x, g0, bb, 1e-5);
  for (double v : ob.data) CHECK(v == doctest::Approx(0.42));

  // mean 0, var 1 before affine
  Matrix on = layer_norm(x, Matrix(1, 5, 1.0), Matrix(1, 5, 0.0), 1e-12);
  for (int i = 0; i < on.rows; ++i) {
    double mean = 0.0, var = 0.0;
    for (int j = 0; j < 5; ++j) mean += on(i, j);
    mean /= 5;
    for (int j = 0; j < 5; ++j) var += (on(i, j) - mean) * (on(i, j) - mean);
    var /= 5;
    CHECK(std::abs(mean) < 1e-9);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("tape: x*x gradient") {
  Tape t;
  Matrix x(1, 1);
  x(0, 0) = 3.0;
  Var vx = t.leaf(x);
  Var loss = t.mul(vx, vx);
  t.backward(loss);
  CHECK(t.grad(vx)(0, 0) == doctest::Approx(6.0));
}

TEST_CASE("tape: sum(matmul) gradient vs finite differences") {
  Rng rng(11);
  ParamStore params;
  params["a"] = random_matrix(rng, 3, 4);
  params["b"] = random_matrix(rng, 4, 2);

  auto loss_fn = [](const ParamStore& p) {
    Tape t;
    Var a = t.leaf(p.at("a"));
    Var b = t.leaf(p.at("b"));
    return t.value(t.sum_all(t.matmul(a, b)))(0, 0);
  };

  Tape t;
  Var a = t.leaf(params["a"]);
  Var b = t.leaf(params["b"]);
  Var loss = t.sum_all(t.matmul(a, b));
  t.backward(loss);
  ParamStore grads;
  grads["a"] = t.grad(a);
  grads["b"] = t.grad(b);

  // grad_a must equal ones * b^T
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      double want = 0.0;
      for (int c = 0; c < 2; ++c) want += params["b"](j, c);
      CHECK(grads["a"](i, j) == doctest::Approx(want).epsilon(1e-12));
    }
  }

  Rng crng(5);
  auto rep = finite_diff_check(loss_fn, params, grads, 1e-4, 20, crng);
  CHECK(rep.max_rel_err < 1e-6);
}

TEST_CASE("tape: unused parameter gets zero gradient") {
  Tape t;
  Matrix x(1, 1);
  x(0, 0) = 2.0;
  Var used = t.leaf(x);
  Var unused = t.leaf(Matrix(2, 2, 1.0));
  Var loss = t.mul(used, used);
  t.backward(loss);
  for (double v : t.grad(unused).data) CHECK(v == 0.0);
}

TEST_CASE("tape: non-scalar root is a usage error") {
  Tape t;
  Var a = t.leaf(Matrix(2, 2, 1.0));
  CHECK_THROWS_AS(t.backward(a), UsageError);
}

TEST_CASE("tape: composite ops pass finite differences") {
  Rng rng(13);
  ParamStore params;
  params["w"] = random_matrix(rng, 6, 6);
  params["g"] = random_matrix(rng, 1, 6, 0.5, 1.5);
  params["b"] = random_matrix(rng, 1, 6, -0.1, 0.1);
  params["cw"] = random_matrix(rng, 6, 3, -0.5, 0.5);
  params["cb"] = random_matrix(rng, 1, 6, -0.1, 0.1);
  Matrix input = random_matrix(rng, 5, 6);

  auto build = [&input](Tape& t, const ParamStore& p,
                        std::map<std::string, Var>* vars) {
    Var w = t.leaf(p.at("w"));
    Var g = t.leaf(p.at("g"));
    Var b = t.leaf(p.at("b"));
    Var cw = t.leaf(p.at("cw"));
    Var cb = t.leaf(p.at("cb"));
    if (vars) {
      (*vars)["w"] = w;
      (*vars)["g"] = g;
      (*vars)["b"] = b;
      (*vars)["cw"] = cw;
      (*vars)["cb"] = cb;
    }
    Var x = t.constant(input);
    Var h = t.matmul(x, w);
    h = t.add_rowvec(h, b);
    h = t.layer_norm_core(h, 1e-5);
    h = t.mul_rowvec(h, g);
    h = t.dwconv_time(h, cw, cb);
    h = t.relu(h);
    Var att = t.softmax_rows(t.matmul(h, t.transpose(h)));
    h = t.matmul(att, h);
    Var lp = t.log_softmax_rows(h);
    Var sliced = t.slice_cols(lp, 1, 5);
    return t.mean_all(sliced);
  };

  auto loss_fn = [&](const ParamStore& p) {
    Tape t;
    return t.value(build(t, p, nullptr))(0, 0);
  };

  Tape t;
  std::map<std::string, Var> vars;
  Var loss = build(t, params, &vars);
  t.backward(loss);
  ParamStore grads;
  for (auto& [name, v] : vars) grads[name] = t.grad(v);

  Rng crng(17);
  auto rep = finite_diff_check(loss_fn, params, grads, 1e-5, 60, crng);
  CHECK(rep.coords_checked == 60);
  CHECK(rep.max_rel_err < 1e-5);
}

TEST_CASE("adam: zero gradients leave parameters unchanged") {
  Rng rng(19);
  ParamStore params;
  params["p"] = random_matrix(rng, 3, 3);
  ParamStore before = params;
  ParamStore grads;
  grads["p"] = Matrix(3, 3);
  AdamState st = AdamState::init(params, {});
  adam_step(params, grads, st);
  adam_step(params, grads, st);
  CHECK(params["p"].data == before["p"].data);
  CHECK(st.step == 2);
}

TEST_CASE("adam: first-step magnitude equals lr") {
  for (double g0 : {0.5, -3.0, 10.0}) {
    ParamStore params;
    params["x"] = Matrix(1, 1, 1.0);
    ParamStore grads;
    grads["x"] = Matrix(1, 1, g0);
    AdamConfig cfg;
    cfg.lr = 1e-3;
    AdamState st = AdamState::init(params, cfg);
    adam_step(params, grads, st);
    const double delta = params["x"](0, 0) - 1.0;
    CHECK(std::abs(std::abs(delta) - cfg.lr) < 1e-9);
    CHECK(delta * g0 < 0.0);  // moves against the gradient
  }
}

TEST_CASE("adam: identical runs are bitwise identical") {
  auto run = []() {
    Rng rng(23);
    ParamStore params;
    params["a"] = random_matrix(rng, 4, 4);
    params["b"] = random_matrix(rng, 1, 4);
    AdamState st = AdamState::init(params, {});
    for (int step = 0; step < 25; ++step) {
      ParamStore grads;
      grads["a"] = random_matrix(rng, 4, 4);
      grads["b"] = random_matrix(rng, 1, 4);
      adam_step(params, grads, st);
    }
    return params;
  };
  ParamStore r1 = run();
  ParamStore r2 = run();
  CHECK(r1["a"].data == r2["a"].data);
  CHECK(r1["b"].data == r2["b"].data);
}

TEST_CASE("adam: shape mismatch throws") {
  ParamStore params;
  params["x"] = Matrix(2, 2);
  ParamStore grads;
  grads["x"] = Matrix(2, 3);
  AdamState st = AdamState::init(params, {});
  CHECK_THROWS_AS(adam_step(params, grads, st), ShapeError);
}

TEST_CASE("finite_diff_check: quadratic and eps validation") {
  ParamStore params;
  params["x"] = Matrix(1, 3);
  params["x"](0, 0) = 1.0;
  params["x"](0, 1) = -2.0;
  params["x"](0, 2) = 0.5;
  auto loss_fn = [](const ParamStore& p) {
    double s = 0.0;
    for (double v : p.at("x").data) s += v * v;
    return s;
  };
  ParamStore grads;
  grads["x"] = params["x"];
  for (double& v : grads["x"].data) v *= 2.0;

  Rng rng(29);
  auto rep = finite_diff_check(loss_fn, params, grads, 1e-5, 30, rng);
  CHECK(rep.max_rel_err < 1e-8);

  CHECK_THROWS_AS(finite_diff_check(loss_fn, params, grads, 0.0, 10, rng),
                  UsageError);
}

TEST_CASE("rng: determinism and stream derivation") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  CHECK(derive_seed(1, "corpus") != derive_seed(1, "init"));
  CHECK(derive_seed(1, "corpus") != derive_seed(2, "corpus"));
  CHECK(derive_seed(123, "shuffle") == derive_seed(123, "shuffle"));

  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    const int v = r.uniform_int(13);
    CHECK(v >= 0);
    CHECK(v < 13);
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("tape: gather/pick/concat gradients") {
  Rng rng(31);
  Matrix table = random_matrix(rng, 5, 3);
  Tape t;
  Var vt = t.leaf(table);
  Var g = t.gather_rows(vt, {0, 2, 2, 4});
  Var p = t.pick(g, {0, 1, 2, 0});
  Var parts = t.concat_cols({p, p});
  Var loss = t.mean_all(parts);
  t.backward(loss);
  // row 2 was gathered twice; its picked columns accumulate
  const Matrix& gt = t.grad(vt);
  CHECK(gt(0, 0) == doctest::Approx(2.0 / 8.0));
  CHECK(gt(2, 1) == doctest::Approx(2.0 / 8.0));
  CHECK(gt(2, 2) == doctest::Approx(2.0 / 8.0));
  CHECK(gt(4, 0) == doctest::Approx(2.0 / 8.0));
  CHECK(gt(1, 0) == 0.0);
}
