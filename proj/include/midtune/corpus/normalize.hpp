// midtune/corpus/normalize.hpp

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

#include "midtune/corpus/manifest.hpp"

namespace midtune::corpus {

// Per-band mean/variance over every frame of a split. ConfigError when the
// split is empty. Zero-variance bands are clamped to kVarianceFloor with a
// warning at application time.
FeatureStats compute_feature_stats(const CorpusManifest& m,
                                   const std::string& split);

inline constexpr double kVarianceFloor = 1e-12;

// Applies (x - mean) / sqrt(max(var, floor)) to every feature file of m and
// stamps the normalization into meta.json. Applying twice is a UsageError.
void apply_normalization(CorpusManifest& m, const FeatureStats& stats);

// Spec-shaped convenience: stats from m's own `stats_split`, applied to all
// of m's splits; stats persisted as <corpus dir>/stats.json.
FeatureStats normalize_features(CorpusManifest& m, const std::string& stats_split);

}  // namespace midtune::corpus
