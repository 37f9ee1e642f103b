// midtune/loss/objectives.hpp

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

#include <vector>

#include "midtune/num/tape.hpp"

namespace midtune::loss {

struct JointLossConfig {
  double lambda_ctc = 0.3;     // in [0, 1]
  double label_smoothing = 0.1;

  void validate() const;
};

// Mean per-token smoothed cross-entropy under teacher forcing. Targets index
// rows of `logits` (one target per decoder position). The smoothed target
// distribution is q = smoothing/V + (1-smoothing) * onehot(target).
num::Var attention_ce(num::Tape& tape, num::Var logits,
                      const std::vector<int>& targets, double smoothing);

// lambda * ctc + (1 - lambda) * attn.
num::Var joint_loss(num::Tape& tape, num::Var ctc, num::Var attn,
                    const JointLossConfig& cfg);

}  // namespace midtune::loss
