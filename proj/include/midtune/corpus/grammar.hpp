// midtune/corpus/grammar.hpp

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

#include "midtune/corpus/phoneme.hpp"
#include "midtune/num/rng.hpp"

namespace midtune::corpus {

// Consonant-vowel alternation text source. Words are joined by the silence
// symbol; lead/trail silence is a rendering concern, not part of the text.
struct GrammarConfig {
  int word_count_min = 3;
  int word_count_max = 12;
  int word_len_min = 2;
  int word_len_max = 5;
  double start_vowel_prob = 0.35;
  double vowel_after_consonant = 0.9;
  double vowel_after_vowel = 0.2;

  void validate() const;
};

std::string sample_text(const Inventory& inv, const GrammarConfig& cfg,
                        num::Rng& rng);

}  // namespace midtune::corpus
