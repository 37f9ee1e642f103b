// CTC loss against the exhaustive alignment-sum oracle, plus collapse and
// gradient checks.

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "midtune/loss/ctc.hpp"
#include "midtune/num/gradcheck.hpp"
#include "midtune/num/matrix.hpp"
#include "midtune/num/rng.hpp"

using namespace midtune;
using namespace midtune::num;
using namespace midtune::loss;

namespace {

Matrix random_logprobs(Rng& rng, int t, int v) {
  Matrix logits(t, v);
  for (double& x : logits.data) x = rng.uniform(-2.0, 2.0);
  return log_softmax_rows(logits);
}

// Oracle: sum over every length-T frame string that collapses to the label.
double ctc_brute_force(const Matrix& lp, const std::vector<int>& label,
                       int blank, int T) {
  const int v = lp.cols;
  std::vector<int> frames(static_cast<std::size_t>(T), 0);
  double total = 0.0;
  while (true) {
    if (collapse(frames, blank) == label) {
      double logp = 0.0;
      for (int t = 0; t < T; ++t) logp += lp(t, frames[static_cast<std::size_t>(t)]);
      total += std::exp(logp);
    }
    int i = 0;
    while (i < T && ++frames[static_cast<std::size_t>(i)] == v) {
      frames[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == T) break;
  }
  return total > 0.0 ? -std::log(total) : std::numeric_limits<double>::infinity();
}

}  // namespace

TEST_CASE("collapse") {
  const int blank = 0;
  // symbols: 1 = a, 2 = b; "a a _ a b b" -> "aab"
  CHECK(collapse({1, 1, 0, 1, 2, 2}, blank) == std::vector<int>{1, 1, 2});
  CHECK(collapse({0, 0, 0}, blank).empty());
  const std::vector<int> clean{1, 2, 1};
  CHECK(collapse(clean, blank) == clean);
  CHECK(collapse(collapse(clean, blank), blank) == clean);
}

TEST_CASE("ctc_loss single-frame and two-frame closed forms") {
  Rng rng(5);
  const int blank = 2;
  Matrix lp = random_logprobs(rng, 1, 3);
  // T=1, label "a" (id 0): loss = -logP(a at frame 1)
  CHECK(ctc_loss_value(lp, {0}, blank, 1) == doctest::Approx(-lp(0, 0)).epsilon(1e-12));

  Matrix lp2 = random_logprobs(rng, 2, 3);
  const double pa1 = std::exp(lp2(0, 0)), pa2 = std::exp(lp2(1, 0));
  const double pb1 = std::exp(lp2(0, blank)), pb2 = std::exp(lp2(1, blank));
  const double want = -std::log(pa1 * pa2 + pa1 * pb2 + pb1 * pa2);
  CHECK(ctc_loss_value(lp2, {0}, blank, 2) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("ctc_loss matches the brute-force oracle on the exhaustive grid") {
  Rng rng(99);
  const int blank = 2;  // alphabet {0, 1} + blank
  // every label over a 2-symbol alphabet with length <= 3 (incl. empty)
  std::vector<std::vector<int>> labels{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& l : labels) {
      if (static_cast<int>(l.size()) == len - 1) {
        for (int s = 0; s < 2; ++s) {
          auto e = l;
          e.push_back(s);
          next.push_back(e);
        }
      }
    }
    for (auto& e : next) labels.push_back(e);
  }

  int checked = 0;
  for (int T = 1; T <= 5; ++T) {
    for (const auto& label : labels) {
      for (int draw = 0; draw < 3; ++draw) {
        Matrix lp = random_logprobs(rng, T, 3);
        const double got = ctc_loss_value(lp, label, blank, T);
        const double want = ctc_brute_force(lp, label, blank, T);
        if (std::isinf(want)) {
          CHECK(std::isinf(got));
        } else {
          CHECK(std::abs(got - want) < 1e-6);
        }
        ++checked;
      }
    }
  }
  CHECK(checked == 5 * 15 * 3);
}

TEST_CASE("ctc_loss: infeasible label yields +inf and no gradient") {
  Rng rng(3);
  Matrix lp = random_logprobs(rng, 2, 3);
  Tape t;
  Var vlp = t.leaf(lp);
  // "aa" needs T >= 3 (repeat requires a separating blank)
  Var loss = ctc_loss(t, vlp, {0, 0}, 2, 2);
  CHECK(std::isinf(t.value(loss)(0, 0)));
  CHECK_FALSE(t.needs_grad(loss));
}

TEST_CASE("ctc_loss gradient passes finite differences through log-softmax") {
  Rng rng(17);
  const int T = 6, V = 4, blank = 3;
  const std::vector<int> label{0, 1, 1, 2};

  ParamStore params;
  params["logits"] = Matrix(T, V);
  for (double& v : params["logits"].data) v = rng.uniform(-1.5, 1.5);

  auto loss_fn = [&](const ParamStore& p) {
    Tape t;
    Var lg = t.leaf(p.at("logits"));
    Var lp = t.log_softmax_rows(lg);
    return t.value(ctc_loss(t, lp, label, blank, T))(0, 0);
  };

  Tape t;
  Var lg = t.leaf(params["logits"]);
  Var lp = t.log_softmax_rows(lg);
  Var loss = ctc_loss(t, lp, label, blank, T);
  t.backward(loss);
  ParamStore grads;
  grads["logits"] = t.grad(lg);

  Rng crng(23);
  auto rep = finite_diff_check(loss_fn, params, grads, 1e-4, 24, crng);
  CHECK(rep.max_rel_err < 1e-3);
  CHECK(rep.max_rel_err < 1e-6);  // should be far tighter in practice
}

TEST_CASE("ctc_loss input validation") {
  Rng rng(29);
  Matrix lp = random_logprobs(rng, 3, 3);
  CHECK_THROWS_AS(ctc_loss_value(lp, {5}, 2, 3), UsageError);
  CHECK_THROWS_AS(ctc_loss_value(lp, {2}, 2, 3), UsageError);  // label == blank
  CHECK_THROWS_AS(ctc_loss_value(lp, {0}, 2, 0), UsageError);
}
