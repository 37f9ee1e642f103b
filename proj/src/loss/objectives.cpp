// midtune/loss/objectives.cpp

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

#include "midtune/loss/objectives.hpp"

#include "midtune/util/errors.hpp"

namespace midtune::loss {

void JointLossConfig::validate() const {
  if (lambda_ctc < 0.0 || lambda_ctc > 1.0) {
    throw ConfigError("lambda_ctc must be in [0, 1]");
  }
  if (label_smoothing < 0.0 || label_smoothing >= 1.0) {
    throw ConfigError("label_smoothing must be in [0, 1)");
  }
}

num::Var attention_ce(num::Tape& tape, num::Var logits,
                      const std::vector<int>& targets, double smoothing) {
  const num::Matrix& lg = tape.value(logits);
  if (static_cast<int>(targets.size()) != lg.rows) {
    throw ShapeError("attention_ce: one target per logit row required");
  }
  const int vocab = lg.cols;
  num::Var lp = tape.log_softmax_rows(logits);
  // loss = mean_t [ -(1-a) * lp[t, y_t] - a/V * sum_k lp[t, k] ]
  num::Var picked = tape.pick(lp, targets);
  num::Var per_tok = tape.scale(picked, -(1.0 - smoothing));
  if (smoothing > 0.0) {
    num::Var rs = tape.row_sum(lp);
    per_tok = tape.add(per_tok, tape.scale(rs, -smoothing / vocab));
  }
  return tape.mean_all(per_tok);
}

num::Var joint_loss(num::Tape& tape, num::Var ctc, num::Var attn,
                    const JointLossConfig& cfg) {
  cfg.validate();
  if (cfg.lambda_ctc == 0.0) return attn;
  if (cfg.lambda_ctc == 1.0) return ctc;
  return tape.add(tape.scale(ctc, cfg.lambda_ctc),
                  tape.scale(attn, 1.0 - cfg.lambda_ctc));
}

}  // namespace midtune::loss
