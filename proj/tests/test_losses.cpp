// Attention cross-entropy and the joint CTC-attention combination.

#include <cmath>

#include "doctest.h"
#include "midtune/loss/objectives.hpp"
#include "midtune/num/gradcheck.hpp"
#include "midtune/num/rng.hpp"

using namespace midtune;
using namespace midtune::num;
using namespace midtune::loss;

namespace {

Var scalar(Tape& t, double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return t.constant(m);
}

}  // namespace

TEST_CASE("attention_ce: uniform logits, no smoothing -> ln V per token") {
  const int V = 7;
  Tape t;
  Var logits = t.constant(Matrix(4, V, 0.0));
  Var loss = attention_ce(t, logits, {0, 3, 6, 2}, 0.0);
  CHECK(t.value(loss)(0, 0) == doctest::Approx(std::log(V)).epsilon(1e-12));
}

TEST_CASE("attention_ce: near-one-hot logits, no smoothing -> near 0") {
  const int V = 5;
  Matrix logits(3, V, 0.0);
  const std::vector<int> targets{1, 4, 0};
  for (int i = 0; i < 3; ++i) logits(i, targets[static_cast<std::size_t>(i)]) = 50.0;
  Tape t;
  Var loss = attention_ce(t, t.constant(logits), targets, 0.0);
  CHECK(t.value(loss)(0, 0) < 1e-12);
  CHECK(t.value(loss)(0, 0) >= 0.0);
}

TEST_CASE("attention_ce: smoothing bounds the loss above zero") {
  const int V = 5;
  const double alpha = 0.1;
  Matrix logits(3, V, 0.0);
  const std::vector<int> targets{1, 4, 0};
  for (int i = 0; i < 3; ++i) logits(i, targets[static_cast<std::size_t>(i)]) = 60.0;
  Tape t;
  Var loss = attention_ce(t, t.constant(logits), targets, alpha);
  // Closed form of smoothed CE: min over logits is the entropy of the
  // smoothed target, which is strictly positive; with a hard margin the
  // off-target terms blow past it.
  const double h_q = -((1 - alpha + alpha / V) * std::log(1 - alpha + alpha / V) +
                       (V - 1) * (alpha / V) * std::log(alpha / V));
  CHECK(t.value(loss)(0, 0) > 0.0);
  CHECK(t.value(loss)(0, 0) >= h_q - 1e-9);
}

TEST_CASE("attention_ce gradient passes finite differences") {
  Rng rng(7);
  ParamStore params;
  params["logits"] = Matrix(5, 6);
  for (double& v : params["logits"].data) v = rng.uniform(-1.0, 1.0);
  const std::vector<int> targets{2, 0, 5, 1, 3};

  auto loss_fn = [&](const ParamStore& p) {
    Tape t;
    return t.value(attention_ce(t, t.leaf(p.at("logits")), targets, 0.1))(0, 0);
  };
  Tape t;
  Var lg = t.leaf(params["logits"]);
  Var loss = attention_ce(t, lg, targets, 0.1);
  t.backward(loss);
  ParamStore grads;
  grads["logits"] = t.grad(lg);
  Rng crng(11);
  auto rep = finite_diff_check(loss_fn, params, grads, 1e-4, 30, crng);
  CHECK(rep.max_rel_err < 1e-3);
  CHECK(rep.max_rel_err < 1e-7);
}

TEST_CASE("joint_loss arithmetic and reductions") {
  Tape t;
  Var ctc = scalar(t, 2.0);
  Var attn = scalar(t, 1.0);

  JointLossConfig cfg;
  cfg.lambda_ctc = 0.3;
  CHECK(t.value(joint_loss(t, ctc, attn, cfg))(0, 0) == doctest::Approx(1.3));

  cfg.lambda_ctc = 0.0;
  Var j0 = joint_loss(t, ctc, attn, cfg);
  CHECK(j0.idx == attn.idx);  // exact reduction, not a copy

  cfg.lambda_ctc = 1.0;
  Var j1 = joint_loss(t, ctc, attn, cfg);
  CHECK(j1.idx == ctc.idx);
}

TEST_CASE("joint_loss is affine in lambda") {
  Tape t;
  Var ctc = scalar(t, 3.5);
  Var attn = scalar(t, -1.25);
  JointLossConfig cfg;
  auto at = [&](double lam) {
    cfg.lambda_ctc = lam;
    return t.value(joint_loss(t, ctc, attn, cfg))(0, 0);
  };
  const double l0 = at(0.0), l1 = at(1.0);
  for (double lam : {0.25, 0.5, 0.71}) {
    CHECK(at(lam) == doctest::Approx(l0 + lam * (l1 - l0)).epsilon(1e-12));
  }
}

TEST_CASE("joint_loss config validation") {
  JointLossConfig cfg;
  cfg.lambda_ctc = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
