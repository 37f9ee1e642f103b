// midtune/corpus/channel.hpp

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

#include <string>
#include <utility>

#include "midtune/corpus/phoneme.hpp"
#include "midtune/corpus/render.hpp"

namespace midtune::corpus {

// Transcript error channel standing in for an imperfect synthesis system.
// Default rates are calibrated by simulation so the measured transcript CER
// hits the model targets (TTS-like 0.34, VC-like 0.72); see
// tests/test_corpus.cpp for the calibration harness.
struct ErrorChannelConfig {
  std::string name = "TTS_LIKE";  // TTS_LIKE | VC_LIKE
  double sub_prob = 0.0;
  double del_prob = 0.0;
  double ins_prob = 0.0;      // geometric continuation probability
  int smoothing_window = 1;   // frames, >= 1

  void validate() const;

  static ErrorChannelConfig tts_like();
  static ErrorChannelConfig vc_like();
  static ErrorChannelConfig clean();  // zero rates, window 1
};

// Per-position i.i.d. substitution/deletion plus geometric insertions.
std::string corrupt_phonemes(const std::string& transcript,
                             const ErrorChannelConfig& channel,
                             const Inventory& inv, num::Rng& rng);

// Centered moving average over frames, truncated at the edges. Window 1 is
// the identity.
num::Matrix oversmooth(const num::Matrix& feats, int window);

// Renders the *corrupted* transcript under the transform, oversmooths, and
// pairs the result with the original clean transcript (the synthesis system
// consumed clean inputs; its output audio is what is distorted).
struct ImperfectSynthesis {
  num::Matrix feats;
  std::string transcript;  // always the input transcript
};

ImperfectSynthesis synth_imperfect(const std::string& transcript,
                                   const ErrorChannelConfig& channel,
                                   const DomainTransform& transform,
                                   const Inventory& inv, int feat_dim,
                                   num::Rng& rng);

}  // namespace midtune::corpus
