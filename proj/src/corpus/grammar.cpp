// midtune/corpus/grammar.cpp

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

#include "midtune/corpus/grammar.hpp"

namespace midtune::corpus {

void GrammarConfig::validate() const {
  if (word_count_min < 1 || word_count_max < word_count_min) {
    throw ConfigError("grammar: bad word count range");
  }
  if (word_len_min < 1 || word_len_max < word_len_min) {
    throw ConfigError("grammar: bad word length range");
  }
  for (double p : {start_vowel_prob, vowel_after_consonant, vowel_after_vowel}) {
    if (p < 0.0 || p > 1.0) throw ConfigError("grammar: probability out of [0,1]");
  }
}

std::string sample_text(const Inventory& inv, const GrammarConfig& cfg,
                        num::Rng& rng) {
  cfg.validate();
  if (inv.vowels().empty() || inv.consonants().empty()) {
    throw ConfigError("grammar: empty alphabet class");
  }
  const std::string& vs = inv.vowels();
  const std::string& cs = inv.consonants();

  const int words =
      cfg.word_count_min + rng.uniform_int(cfg.word_count_max - cfg.word_count_min + 1);
  std::string out;
  for (int w = 0; w < words; ++w) {
    if (w > 0) out.push_back(inv.silence_symbol());
    const int len =
        cfg.word_len_min + rng.uniform_int(cfg.word_len_max - cfg.word_len_min + 1);
    bool is_vowel = rng.bernoulli(cfg.start_vowel_prob);
    for (int i = 0; i < len; ++i) {
      if (is_vowel) {
        out.push_back(vs[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(vs.size())))]);
        is_vowel = rng.bernoulli(cfg.vowel_after_vowel);
      } else {
        out.push_back(cs[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(cs.size())))]);
        is_vowel = rng.bernoulli(cfg.vowel_after_consonant);
      }
    }
  }
  return out;
}

}  // namespace midtune::corpus
