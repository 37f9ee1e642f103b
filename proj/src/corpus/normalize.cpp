// midtune/corpus/normalize.cpp

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

#include "midtune/corpus/normalize.hpp"

#include <cmath>
#include <cstdio>

#include "midtune/corpus/featio.hpp"
#include "midtune/util/errors.hpp"

namespace midtune::corpus {

FeatureStats compute_feature_stats(const CorpusManifest& m,
                                   const std::string& split) {
  const auto utts = m.split(split);
  if (utts.empty()) {
    throw ConfigError("stats split '" + split + "' of corpus '" + m.name +
                      "' is empty");
  }
  FeatureStats s;
  s.source = m.name + "/" + split;
  long long n = 0;
  for (const Utterance* u : utts) {
    const num::Matrix feats = read_feat(feat_path(m, *u));
    if (s.mean.empty()) {
      s.mean.assign(static_cast<std::size_t>(feats.cols), 0.0);
      s.var.assign(static_cast<std::size_t>(feats.cols), 0.0);
    }
    for (int t = 0; t < feats.rows; ++t) {
      const double* row = feats.row(t);
      for (int b = 0; b < feats.cols; ++b) {
        s.mean[static_cast<std::size_t>(b)] += row[b];
      }
    }
    n += feats.rows;
  }
  for (double& v : s.mean) v /= static_cast<double>(n);
  for (const Utterance* u : utts) {
    const num::Matrix feats = read_feat(feat_path(m, *u));
    for (int t = 0; t < feats.rows; ++t) {
      const double* row = feats.row(t);
      for (int b = 0; b < feats.cols; ++b) {
        const double d = row[b] - s.mean[static_cast<std::size_t>(b)];
        s.var[static_cast<std::size_t>(b)] += d * d;
      }
    }
  }
  for (double& v : s.var) v /= static_cast<double>(n);
  return s;
}

void apply_normalization(CorpusManifest& m, const FeatureStats& stats) {
  if (m.normalized) {
    throw UsageError("corpus '" + m.name +
                     "' is already normalized (stats from " +
                     m.normalized->stats_source + ")");
  }
  std::vector<double> inv_std(stats.var.size());
  for (std::size_t b = 0; b < stats.var.size(); ++b) {
    double v = stats.var[b];
    if (v < kVarianceFloor) {
      std::fprintf(stderr,
                   "warning: band %zu has near-zero variance (%g); clamping\n",
                   b, v);
      v = kVarianceFloor;
    }
    inv_std[b] = 1.0 / std::sqrt(v);
  }
  for (const Utterance& u : m.utts) {
    num::Matrix feats = read_feat(feat_path(m, u));
    if (feats.cols != static_cast<int>(stats.mean.size())) {
      throw DataError("feature dimension does not match stats for " + u.id);
    }
    for (int t = 0; t < feats.rows; ++t) {
      double* row = feats.row(t);
      for (int b = 0; b < feats.cols; ++b) {
        row[b] = (row[b] - stats.mean[static_cast<std::size_t>(b)]) *
                 inv_std[static_cast<std::size_t>(b)];
      }
    }
    write_feat(feat_path(m, u), feats);
  }
  m.normalized = NormalizationInfo{stats.source, stats.digest()};
  save_manifest(m, m.dir);
}

FeatureStats normalize_features(CorpusManifest& m, const std::string& stats_split) {
  if (m.normalized) {
    throw UsageError("corpus '" + m.name + "' is already normalized");
  }
  FeatureStats stats = compute_feature_stats(m, stats_split);
  apply_normalization(m, stats);
  save_stats(stats, m.dir / "stats.json");
  return stats;
}

}  // namespace midtune::corpus
