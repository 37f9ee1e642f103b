// midtune/corpus/build.hpp

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
#include <string>
#include <vector>

#include "json.hpp"
#include "midtune/corpus/channel.hpp"
#include "midtune/corpus/grammar.hpp"
#include "midtune/corpus/manifest.hpp"

namespace midtune::corpus {

// Full generation config: the healthy pretraining corpus, the imperfect
// intermediate corpora, the parallel target corpora, and normalization.
struct CorpusConfig {
  int feat_dim = 40;
  GrammarConfig grammar;
  ErrorChannelConfig tts_like = ErrorChannelConfig::tts_like();
  ErrorChannelConfig vc_like = ErrorChannelConfig::vc_like();
  DomainTransform healthy = DomainTransform::healthy();
  DomainTransform elsimu = DomainTransform::elsimu();
  DomainTransform elreal = DomainTransform::elreal();
  int pretrain_train = 2000;
  int pretrain_dev = 40;
  int pretrain_test = 40;
  int if_utts = 1000;
  int target_train = 116;
  int target_dev = 40;
  int target_test = 40;
  bool normalize = true;

  void validate() const;
  nlohmann::json to_json() const;
  // Strict parse: unknown keys anywhere are ConfigErrors.
  static CorpusConfig from_json(const nlohmann::json& j);
};

// Corpus names produced by build_corpus.
inline constexpr const char* kPretrain = "pretrain";
inline constexpr const char* kIfTts = "if_tts";
inline constexpr const char* kIfVc = "if_vc";
inline constexpr const char* kIfSimuClean = "if_simu_clean";
inline constexpr const char* kTargetElreal = "target_elreal";
inline constexpr const char* kTargetElsimu = "target_elsimu";
inline constexpr const char* kHealthyPar = "healthy_par";

std::vector<std::string> all_corpus_names();

// Generates every corpus under out_dir (one subdirectory per corpus), then
// normalizes all of them with the pretrain-train statistics when
// cfg.normalize is set. Pure function of (cfg, master_seed).
void build_corpus(const CorpusConfig& cfg, std::uint64_t master_seed,
                  const std::filesystem::path& out_dir);

}  // namespace midtune::corpus
