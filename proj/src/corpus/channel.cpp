// midtune/corpus/channel.cpp

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

#include "midtune/corpus/channel.hpp"

#include <algorithm>

namespace midtune::corpus {

void ErrorChannelConfig::validate() const {
  for (double p : {sub_prob, del_prob, ins_prob}) {
    if (p < 0.0 || p >= 1.0) {
      throw ConfigError("error channel probabilities must be in [0, 1)");
    }
  }
  if (smoothing_window < 1) throw ConfigError("smoothing window must be >= 1");
}

ErrorChannelConfig ErrorChannelConfig::tts_like() {
  ErrorChannelConfig c;
  c.name = "TTS_LIKE";
  c.sub_prob = 0.20;
  c.del_prob = 0.08;
  c.ins_prob = 0.08;
  c.smoothing_window = 3;
  return c;
}

ErrorChannelConfig ErrorChannelConfig::vc_like() {
  ErrorChannelConfig c;
  c.name = "VC_LIKE";
  c.sub_prob = 0.45;
  c.del_prob = 0.18;
  c.ins_prob = 0.15;
  c.smoothing_window = 5;
  return c;
}

ErrorChannelConfig ErrorChannelConfig::clean() {
  ErrorChannelConfig c;
  c.name = "CLEAN";
  return c;
}

std::string corrupt_phonemes(const std::string& transcript,
                             const ErrorChannelConfig& channel,
                             const Inventory& inv, num::Rng& rng) {
  channel.validate();
  const std::string& alphabet = inv.alphabet();
  const int a = static_cast<int>(alphabet.size());
  std::string out;
  out.reserve(transcript.size() + 4);
  // Zero-probability events draw nothing, so a zero-rate channel leaves the
  // rng stream untouched (synth of a clean channel == plain render).
  for (char c : transcript) {
    const bool deleted = channel.del_prob > 0.0 && rng.bernoulli(channel.del_prob);
    if (!deleted) {
      if (channel.sub_prob > 0.0 && rng.bernoulli(channel.sub_prob)) {
        // uniform over the other a-1 symbols
        int pick = rng.uniform_int(a - 1);
        if (alphabet[static_cast<std::size_t>(pick)] == c) pick = a - 1;
        out.push_back(alphabet[static_cast<std::size_t>(pick)]);
      } else {
        out.push_back(c);
      }
    }
    while (channel.ins_prob > 0.0 && rng.bernoulli(channel.ins_prob)) {
      out.push_back(alphabet[static_cast<std::size_t>(rng.uniform_int(a))]);
    }
  }
  return out;
}

num::Matrix oversmooth(const num::Matrix& feats, int window) {
  if (window < 1) throw ConfigError("smoothing window must be >= 1");
  if (window == 1) return feats;
  const int half = window / 2;
  num::Matrix out(feats.rows, feats.cols);
  for (int t = 0; t < feats.rows; ++t) {
    const int lo = std::max(0, t - half);
    const int hi = std::min(feats.rows - 1, t + half);
    const double inv_n = 1.0 / (hi - lo + 1);
    for (int b = 0; b < feats.cols; ++b) {
      double s = 0.0;
      for (int u = lo; u <= hi; ++u) s += feats(u, b);
      out(t, b) = s * inv_n;
    }
  }
  return out;
}

ImperfectSynthesis synth_imperfect(const std::string& transcript,
                                   const ErrorChannelConfig& channel,
                                   const DomainTransform& transform,
                                   const Inventory& inv, int feat_dim,
                                   num::Rng& rng) {
  const std::string corrupted = corrupt_phonemes(transcript, channel, inv, rng);
  num::Matrix feats = render(corrupted, inv, transform, feat_dim, rng);
  return {oversmooth(feats, channel.smoothing_window), transcript};
}

}  // namespace midtune::corpus
