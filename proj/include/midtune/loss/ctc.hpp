// midtune/loss/ctc.hpp

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

// Negative log-likelihood of `label` under per-frame log-probabilities
// (rows = frames over [0, valid_frames), columns = classes, `blank` among
// them), summed over all blank-augmented monotonic alignments by the
// log-space forward recursion over 2L+1 states.
//
// Returns +inf (recorded as a constant, no gradient) when the label is
// infeasible: valid_frames < L + #adjacent-repeats. Callers are expected to
// skip such utterances during training.
num::Var ctc_loss(num::Tape& tape, num::Var logprobs,
                  const std::vector<int>& label, int blank, int valid_frames);

// Plain value-only variant used by tests and diagnostics.
double ctc_loss_value(const num::Matrix& logprobs, const std::vector<int>& label,
                      int blank, int valid_frames);

bool ctc_feasible(int valid_frames, const std::vector<int>& label);

// CTC path reduction: drop repeats, then blanks.
std::vector<int> collapse(const std::vector<int>& frames, int blank);

}  // namespace midtune::loss
