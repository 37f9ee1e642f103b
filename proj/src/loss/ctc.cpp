// midtune/loss/ctc.cpp

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

#include "midtune/loss/ctc.hpp"

#include <cmath>
#include <limits>

#include "midtune/util/errors.hpp"

namespace midtune::loss {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

int count_repeats(const std::vector<int>& label) {
  int r = 0;
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] == label[i - 1]) ++r;
  }
  return r;
}

// Extended state s -> class id.
inline int ext_class(const std::vector<int>& label, int blank, int s) {
  return (s % 2 == 0) ? blank : label[static_cast<std::size_t>(s / 2)];
}

// Log-space forward over the 2L+1 blank-augmented states. Returns log P.
// alphas is T x S when out_alpha is non-null.
double forward_logp(const num::Matrix& lp, const std::vector<int>& label,
                    int blank, int T, num::Matrix* out_alpha) {
  const int L = static_cast<int>(label.size());
  const int S = 2 * L + 1;
  num::Matrix local;
  num::Matrix& alpha = out_alpha ? *out_alpha : local;
  alpha = num::Matrix(T, S, kNegInf);

  alpha(0, 0) = lp(0, blank);
  if (S > 1) alpha(0, 1) = lp(0, ext_class(label, blank, 1));
  for (int t = 1; t < T; ++t) {
    for (int s = 0; s < S; ++s) {
      double a = alpha(t - 1, s);
      if (s >= 1) a = logaddexp(a, alpha(t - 1, s - 1));
      if (s >= 2) {
        const int c = ext_class(label, blank, s);
        if (c != blank && c != ext_class(label, blank, s - 2)) {
          a = logaddexp(a, alpha(t - 1, s - 2));
        }
      }
      if (a != kNegInf) a += lp(t, ext_class(label, blank, s));
      alpha(t, s) = a;
    }
  }
  double logp = alpha(T - 1, S - 1);
  if (S > 1) logp = logaddexp(logp, alpha(T - 1, S - 2));
  return logp;
}

void validate_inputs(const num::Matrix& lp, const std::vector<int>& label,
                     int blank, int T) {
  if (T < 1 || T > lp.rows) throw UsageError("ctc_loss: bad valid_frames");
  if (blank < 0 || blank >= lp.cols) throw UsageError("ctc_loss: bad blank id");
  for (int c : label) {
    if (c < 0 || c >= lp.cols || c == blank) {
      throw UsageError("ctc_loss: label symbol out of range");
    }
  }
}

}  // namespace

bool ctc_feasible(int valid_frames, const std::vector<int>& label) {
  return valid_frames >= static_cast<int>(label.size()) + count_repeats(label);
}

double ctc_loss_value(const num::Matrix& logprobs, const std::vector<int>& label,
                      int blank, int valid_frames) {
  validate_inputs(logprobs, label, blank, valid_frames);
  if (!ctc_feasible(valid_frames, label)) {
    return std::numeric_limits<double>::infinity();
  }
  return -forward_logp(logprobs, label, blank, valid_frames, nullptr);
}

num::Var ctc_loss(num::Tape& tape, num::Var logprobs,
                  const std::vector<int>& label, int blank, int valid_frames) {
  const num::Matrix& lp = tape.value(logprobs);
  validate_inputs(lp, label, blank, valid_frames);

  num::Matrix out(1, 1);
  if (!ctc_feasible(valid_frames, label)) {
    out(0, 0) = std::numeric_limits<double>::infinity();
    return tape.constant(std::move(out));
  }

  auto alpha = std::make_shared<num::Matrix>();
  const double logp = forward_logp(lp, label, blank, valid_frames, alpha.get());
  out(0, 0) = -logp;

  const int T = valid_frames;
  auto label_copy = std::make_shared<std::vector<int>>(label);
  return tape.custom(
      std::move(out), {logprobs},
      [logprobs, label_copy, blank, T, alpha, logp](num::Tape& t,
                                                    const num::Matrix& g) {
        const num::Matrix& lp2 = t.value(logprobs);
        const std::vector<int>& lab = *label_copy;
        const int L = static_cast<int>(lab.size());
        const int S = 2 * L + 1;

        // Backward pass (beta includes the emission at t, like alpha).
        num::Matrix beta(T, S, kNegInf);
        beta(T - 1, S - 1) = lp2(T - 1, ext_class(lab, blank, S - 1));
        if (S > 1) beta(T - 1, S - 2) = lp2(T - 1, ext_class(lab, blank, S - 2));
        for (int ti = T - 2; ti >= 0; --ti) {
          for (int s = 0; s < S; ++s) {
            double b = beta(ti + 1, s);
            if (s + 1 < S) b = logaddexp(b, beta(ti + 1, s + 1));
            if (s + 2 < S) {
              const int c2 = ext_class(lab, blank, s + 2);
              if (c2 != blank && c2 != ext_class(lab, blank, s)) {
                b = logaddexp(b, beta(ti + 1, s + 2));
              }
            }
            if (b != kNegInf) b += lp2(ti, ext_class(lab, blank, s));
            beta(ti, s) = b;
          }
        }

        // dL/dlp(t,k) = -exp(logsum_{s: ext=k}(alpha+beta-lp) - logP)
        const double gscale = g(0, 0);
        num::Matrix& glp = t.grad_mut(logprobs);
        std::vector<double> acc(static_cast<std::size_t>(lp2.cols));
        for (int ti = 0; ti < T; ++ti) {
          std::fill(acc.begin(), acc.end(), kNegInf);
          for (int s = 0; s < S; ++s) {
            const int c = ext_class(lab, blank, s);
            const double a = (*alpha)(ti, s);
            const double b = beta(ti, s);
            if (a == kNegInf || b == kNegInf) continue;
            const double paths = a + b - lp2(ti, c);
            acc[static_cast<std::size_t>(c)] =
                logaddexp(acc[static_cast<std::size_t>(c)], paths);
          }
          for (int c = 0; c < lp2.cols; ++c) {
            const double lc = acc[static_cast<std::size_t>(c)];
            if (lc == kNegInf) continue;
            glp(ti, c) += gscale * (-std::exp(lc - logp));
          }
        }
      });
}

std::vector<int> collapse(const std::vector<int>& frames, int blank) {
  std::vector<int> out;
  int prev = -1;
  for (int c : frames) {
    if (c != prev) {
      if (c != blank) out.push_back(c);
      prev = c;
    }
  }
  return out;
}

}  // namespace midtune::loss
