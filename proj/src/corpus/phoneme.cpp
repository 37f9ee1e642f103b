// midtune/corpus/phoneme.cpp

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

#include "midtune/corpus/phoneme.hpp"

namespace midtune::corpus {

namespace {

PhonemeSpec vowel(char s, std::vector<int> bands) {
  PhonemeSpec p;
  p.symbol = s;
  p.kind = PhonemeKind::kVowel;
  p.band_centers = std::move(bands);
  p.amplitude = 1.0;
  p.dur_min = 3;
  p.dur_max = 6;
  return p;
}

PhonemeSpec consonant(char s, std::vector<int> bands, double amp,
                      bool noisy = false) {
  PhonemeSpec p;
  p.symbol = s;
  p.kind = PhonemeKind::kConsonant;
  p.band_centers = std::move(bands);
  p.amplitude = amp;
  p.dur_min = 2;
  p.dur_max = 4;
  p.noisy = noisy;
  return p;
}

}  // namespace

Inventory Inventory::standard(int feat_dim) {
  Inventory inv;
  auto add = [&](PhonemeSpec p) {
    for (int c : p.band_centers) {
      if (c < 0 || c >= feat_dim) {
        throw ConfigError("phoneme band center outside feature range");
      }
    }
    inv.alphabet_.push_back(p.symbol);
    if (p.kind == PhonemeKind::kVowel) inv.vowels_.push_back(p.symbol);
    if (p.kind == PhonemeKind::kConsonant) inv.consonants_.push_back(p.symbol);
    inv.lut_[static_cast<unsigned char>(p.symbol)] =
        static_cast<int>(inv.phonemes_.size()) + 1;
    inv.phonemes_.push_back(std::move(p));
  };

  add(vowel('a', {7, 14}));
  add(vowel('e', {6, 19}));
  add(vowel('i', {6, 24}));
  add(vowel('o', {8, 11}));
  add(vowel('u', {6, 9}));

  add(consonant('b', {12}, 0.75));
  add(consonant('d', {16}, 0.75));
  add(consonant('f', {26}, 0.60, true));
  add(consonant('g', {20}, 0.75));
  add(consonant('h', {22}, 0.55, true));
  add(consonant('k', {20, 30}, 0.60));
  add(consonant('m', {7, 13}, 0.70));
  add(consonant('n', {7, 17}, 0.70));
  add(consonant('p', {12, 26}, 0.60));
  add(consonant('r', {9, 15}, 0.70));
  add(consonant('s', {30}, 0.65, true));
  add(consonant('t', {16, 28}, 0.60));
  add(consonant('v', {24}, 0.70));
  add(consonant('z', {32}, 0.65, true));

  PhonemeSpec sil;
  sil.symbol = '_';
  sil.kind = PhonemeKind::kSilence;
  sil.amplitude = 0.0;
  sil.dur_min = 2;
  sil.dur_max = 4;
  add(std::move(sil));
  return inv;
}

const PhonemeSpec& Inventory::lookup(char symbol) const {
  const int idx = lut_[static_cast<unsigned char>(symbol)];
  if (idx == 0) {
    throw DataError(std::string("unknown symbol in transcript: '") + symbol + "'");
  }
  return phonemes_[static_cast<std::size_t>(idx - 1)];
}

bool Inventory::contains(char symbol) const {
  return lut_[static_cast<unsigned char>(symbol)] != 0;
}

void DomainTransform::validate() const {
  if (time_stretch < 1.0) throw ConfigError("time_stretch must be >= 1");
  if (pronunciation_perturb_prob < 0.0 || pronunciation_perturb_prob > 1.0) {
    throw ConfigError("pronunciation_perturb_prob must be in [0, 1]");
  }
  if (buzz_gain < 0.0) throw ConfigError("buzz_gain must be >= 0");
}

DomainTransform DomainTransform::healthy() {
  DomainTransform t;
  t.name = "HEALTHY";
  return t;
}

DomainTransform DomainTransform::elsimu() {
  DomainTransform t;
  t.name = "ELSIMU";
  t.monotone_excitation = true;
  t.buzz_gain = 0.5;
  t.time_stretch = 1.43;  // Train-split duration ratio to HEALTHY
  return t;
}

DomainTransform DomainTransform::elreal() {
  DomainTransform t;
  t.name = "ELREAL";
  t.monotone_excitation = true;
  t.buzz_gain = 0.5;
  t.spectral_tilt = 0.8;
  t.time_stretch = 1.32;
  t.pronunciation_perturb_prob = 0.25;
  t.formant_shift_bins = 2;
  return t;
}

}  // namespace midtune::corpus
