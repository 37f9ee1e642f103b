// midtune/corpus/render.cpp

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

#include "midtune/corpus/render.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace midtune::corpus {

namespace {

constexpr double kBumpSigma2 = 2.0 * 1.2 * 1.2;
constexpr double kNoiseFloor = 0.02;
constexpr double kCombGain = 0.9;
constexpr double kCombDecay = 0.75;
constexpr double kHealthyPitchStart = 5.5;
constexpr double kHealthyPitchEnd = 2.6;
constexpr double kHealthyWobbleAmp = 0.35;
constexpr double kHealthyWobblePeriod = 23.0;
constexpr double kMonotonePitch = 4.0;

struct Segment {
  const PhonemeSpec* ph;
  int frames;
  double amp_scale;
  bool perturbed;
};

int stretched_duration(int base, double stretch) {
  const int d = static_cast<int>(std::lround(base * stretch));
  return d < 1 ? 1 : d;
}

void deposit_comb(std::vector<double>& x, double pitch, double gain) {
  for (int m = 1;; ++m) {
    const double pos = m * pitch;
    if (pos >= kExcitationBins - 1) break;
    const double amp = gain * std::pow(kCombDecay, m - 1);
    const int b0 = static_cast<int>(pos);
    const double frac = pos - b0;
    x[static_cast<std::size_t>(b0)] += amp * (1.0 - frac);
    x[static_cast<std::size_t>(b0 + 1)] += amp * frac;
  }
}

}  // namespace

num::Matrix render(const std::string& transcript, const Inventory& inv,
                   const DomainTransform& transform, int feat_dim,
                   num::Rng& rng) {
  transform.validate();

  const PhonemeSpec& sil = inv.lookup(inv.silence_symbol());
  std::vector<Segment> segments;
  segments.reserve(transcript.size() + 2);

  auto sample_segment = [&](const PhonemeSpec& ph) {
    Segment s;
    s.ph = &ph;
    const int base = ph.dur_min + rng.uniform_int(ph.dur_max - ph.dur_min + 1);
    s.frames = stretched_duration(base, transform.time_stretch);
    s.amp_scale =
        ph.kind == PhonemeKind::kSilence ? 0.0 : rng.uniform(0.9, 1.1);
    s.perturbed = ph.kind == PhonemeKind::kConsonant &&
                  transform.pronunciation_perturb_prob > 0.0 &&
                  rng.bernoulli(transform.pronunciation_perturb_prob);
    return s;
  };

  segments.push_back(sample_segment(sil));  // lead silence
  for (char c : transcript) segments.push_back(sample_segment(inv.lookup(c)));
  segments.push_back(sample_segment(sil));  // trail silence

  int total = 0;
  for (const Segment& s : segments) total += s.frames;

  const double wobble_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  num::Matrix out(total, feat_dim);
  std::vector<double> x(static_cast<std::size_t>(feat_dim));

  int t = 0;
  for (const Segment& seg : segments) {
    const PhonemeSpec& ph = *seg.ph;
    for (int f = 0; f < seg.frames; ++f, ++t) {
      std::fill(x.begin(), x.end(), 0.0);

      if (ph.kind != PhonemeKind::kSilence) {
        if (seg.perturbed) {
          // pronunciation failure: broadband noise instead of the bump
          for (int b = 8; b < std::min(32, feat_dim); ++b) {
            x[static_cast<std::size_t>(b)] += rng.uniform(0.0, ph.amplitude);
          }
        } else {
          for (int c : ph.band_centers) {
            const int cc = c + transform.formant_shift_bins;
            for (int b = std::max(0, cc - 5); b < std::min(feat_dim, cc + 6); ++b) {
              const double d = b - cc;
              x[static_cast<std::size_t>(b)] +=
                  ph.amplitude * seg.amp_scale * std::exp(-d * d / kBumpSigma2);
            }
          }
          if (ph.noisy) {
            for (int c : ph.band_centers) {
              const int cc = c + transform.formant_shift_bins;
              for (int b = std::max(0, cc - 3); b < std::min(feat_dim, cc + 4); ++b) {
                x[static_cast<std::size_t>(b)] +=
                    rng.uniform(0.0, ph.amplitude * 0.8);
              }
            }
          }
        }
      }

      if (transform.monotone_excitation) {
        // The device hums at a fixed pitch through the whole utterance.
        deposit_comb(x, kMonotonePitch, kCombGain);
        for (int b = 0; b < std::min(3, feat_dim); ++b) {
          x[static_cast<std::size_t>(b)] += transform.buzz_gain;
        }
      } else if (ph.kind != PhonemeKind::kSilence) {
        // Natural voicing: declining pitch with a slow wobble, amplitude
        // following the segment.
        const double frac = total > 1 ? static_cast<double>(t) / (total - 1) : 0.0;
        const double pitch =
            kHealthyPitchStart + (kHealthyPitchEnd - kHealthyPitchStart) * frac +
            kHealthyWobbleAmp *
                std::sin(2.0 * std::numbers::pi * t / kHealthyWobblePeriod +
                         wobble_phase);
        deposit_comb(x, pitch, kCombGain * seg.amp_scale);
      }

      if (transform.spectral_tilt != 0.0) {
        for (int b = 0; b < feat_dim; ++b) {
          x[static_cast<std::size_t>(b)] *=
              std::exp(-transform.spectral_tilt * b / feat_dim);
        }
      }
      for (int b = 0; b < feat_dim; ++b) {
        x[static_cast<std::size_t>(b)] += kNoiseFloor * rng.uniform();
        out(t, b) = std::log1p(x[static_cast<std::size_t>(b)]);
      }
    }
  }
  return out;
}

}  // namespace midtune::corpus
