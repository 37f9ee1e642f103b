// midtune/corpus/manifest.hpp

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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "midtune/num/matrix.hpp"

namespace midtune::corpus {

struct Utterance {
  std::string id;
  std::string domain;      // HEALTHY | ELSIMU | ELREAL
  std::string split;       // train | dev | test
  std::string transcript;  // over the corpus alphabet; nonempty
  std::string feat_path;   // relative to the manifest directory
  int n_frames = 0;
  std::string label_mode = "CLEAN";  // CLEAN | RANDOMIZED | SWAPPED
};

struct NormalizationInfo {
  std::string stats_source;  // "<corpus>/<split>" that produced the stats
  std::string stats_digest;
};

// Corpus record set. The JSON-lines manifest holds exactly one record per
// utterance; corpus-level fields live in a sidecar meta.json.
struct CorpusManifest {
  std::string name;
  std::string alphabet;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::vector<Utterance> utts;
  std::optional<NormalizationInfo> normalized;

  std::filesystem::path dir;  // set on load/save

  std::vector<const Utterance*> split(const std::string& name) const;
  const Utterance* find(const std::string& id) const;
  void validate() const;  // unique ids, nonempty transcripts
};

// Writes <dir>/manifest.jsonl and <dir>/meta.json.
void save_manifest(const CorpusManifest& m, const std::filesystem::path& dir);
CorpusManifest load_manifest(const std::filesystem::path& dir);

// Resolve an utterance's feature file path.
std::filesystem::path feat_path(const CorpusManifest& m, const Utterance& u);

// Per-band mean/variance feature statistics.
struct FeatureStats {
  std::vector<double> mean;
  std::vector<double> var;
  std::string source;  // "<corpus>/<split>"
  std::string digest() const;
};

void save_stats(const FeatureStats& s, const std::filesystem::path& path);
FeatureStats load_stats(const std::filesystem::path& path);

}  // namespace midtune::corpus
