// midtune/corpus/render.hpp

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
#include "midtune/num/matrix.hpp"
#include "midtune/num/rng.hpp"

namespace midtune::corpus {

// Synthesizes a T x F filterbank-like feature sequence for a transcript
// under one domain transform. One frame is nominally 10 ms.
//
// Per phoneme: a segment of sampled duration (scaled by time_stretch) of
// formant-band bumps plus an excitation pattern. HEALTHY excitation is a
// pitch-declining comb with a slow wobble; monotone excitation is a
// fixed-band constant comb plus constant low-band buzz. ELREAL additionally
// shifts formant bands and occasionally replaces a consonant's bump with
// broadband noise. Values are log1p energies; all finite.
num::Matrix render(const std::string& transcript, const Inventory& inv,
                   const DomainTransform& transform, int feat_dim,
                   num::Rng& rng);

// Highest bin (exclusive) of the excitation comb region.
constexpr int kExcitationBins = 16;

}  // namespace midtune::corpus
