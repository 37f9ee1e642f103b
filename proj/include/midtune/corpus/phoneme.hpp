// midtune/corpus/phoneme.hpp

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
#include <vector>

#include "midtune/util/errors.hpp"

namespace midtune::corpus {

enum class PhonemeKind { kVowel, kConsonant, kSilence };

// One symbol of the synthetic inventory. Transcript characters map 1:1 to
// phonemes, so channel CER is directly measurable on text.
struct PhonemeSpec {
  char symbol = 0;
  PhonemeKind kind = PhonemeKind::kSilence;
  std::vector<int> band_centers;  // filterbank bin indices, < feat_dim
  double amplitude = 0.0;
  int dur_min = 1;  // frames, before time stretch
  int dur_max = 1;
  bool noisy = false;  // fricative-like: band-localized noise on top of bump
};

class Inventory {
 public:
  // 5 vowels, 14 consonants, 1 silence; vowel formants sit above bin 5 so the
  // low bins stay an excitation-only region.
  static Inventory standard(int feat_dim);

  const std::vector<PhonemeSpec>& phonemes() const { return phonemes_; }
  const std::string& alphabet() const { return alphabet_; }
  const std::string& vowels() const { return vowels_; }
  const std::string& consonants() const { return consonants_; }
  char silence_symbol() const { return '_'; }

  const PhonemeSpec& lookup(char symbol) const;  // DataError on unknown
  bool contains(char symbol) const;

 private:
  std::vector<PhonemeSpec> phonemes_;
  std::string alphabet_;
  std::string vowels_;
  std::string consonants_;
  int lut_[256] = {};
};

// Rendering knobs for one domain. ELSIMU activates a strict subset of
// ELREAL's knobs (monotone excitation + buzz), per the domain model.
struct DomainTransform {
  std::string name = "HEALTHY";  // HEALTHY | ELSIMU | ELREAL
  bool monotone_excitation = false;
  double buzz_gain = 0.0;
  double spectral_tilt = 0.0;
  double time_stretch = 1.0;  // >= 1
  double pronunciation_perturb_prob = 0.0;
  int formant_shift_bins = 0;

  void validate() const;

  static DomainTransform healthy();
  static DomainTransform elsimu();
  static DomainTransform elreal();
};

}  // namespace midtune::corpus
