// midtune/corpus/build.cpp

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

#include "midtune/corpus/build.hpp"

#include <cstdio>
#include <fstream>

#include "midtune/config/schema.hpp"
#include "midtune/corpus/featio.hpp"
#include "midtune/corpus/normalize.hpp"

namespace midtune::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json transform_to_json(const DomainTransform& t) {
  return json{{"monotone_excitation", t.monotone_excitation},
              {"buzz_gain", t.buzz_gain},
              {"spectral_tilt", t.spectral_tilt},
              {"time_stretch", t.time_stretch},
              {"pronunciation_perturb_prob", t.pronunciation_perturb_prob},
              {"formant_shift_bins", t.formant_shift_bins}};
}

DomainTransform transform_from_json(DomainTransform base, const json& j,
                                    const std::string& ctx) {
  config::check_keys(j,
                     {"monotone_excitation", "buzz_gain", "spectral_tilt",
                      "time_stretch", "pronunciation_perturb_prob",
                      "formant_shift_bins"},
                     ctx);
  base.monotone_excitation =
      config::get_or(j, "monotone_excitation", base.monotone_excitation);
  base.buzz_gain = config::get_or(j, "buzz_gain", base.buzz_gain);
  base.spectral_tilt = config::get_or(j, "spectral_tilt", base.spectral_tilt);
  base.time_stretch = config::get_or(j, "time_stretch", base.time_stretch);
  base.pronunciation_perturb_prob = config::get_or(
      j, "pronunciation_perturb_prob", base.pronunciation_perturb_prob);
  base.formant_shift_bins =
      config::get_or(j, "formant_shift_bins", base.formant_shift_bins);
  base.validate();
  return base;
}

json channel_to_json(const ErrorChannelConfig& c) {
  return json{{"sub", c.sub_prob},
              {"del", c.del_prob},
              {"ins", c.ins_prob},
              {"window", c.smoothing_window}};
}

ErrorChannelConfig channel_from_json(ErrorChannelConfig base, const json& j,
                                     const std::string& ctx) {
  config::check_keys(j, {"sub", "del", "ins", "window"}, ctx);
  base.sub_prob = config::get_or(j, "sub", base.sub_prob);
  base.del_prob = config::get_or(j, "del", base.del_prob);
  base.ins_prob = config::get_or(j, "ins", base.ins_prob);
  base.smoothing_window = config::get_or(j, "window", base.smoothing_window);
  base.validate();
  return base;
}

struct CorpusPlan {
  std::string name;
  std::string domain;
  // split name -> count
  std::vector<std::pair<std::string, int>> splits;
  bool parallel_text = false;           // texts shared across parallel corpora
  const DomainTransform* transform = nullptr;
  const ErrorChannelConfig* channel = nullptr;  // null: plain render
};

void generate_one(const CorpusPlan& plan, const CorpusConfig& cfg,
                  const Inventory& inv, std::uint64_t master,
                  const std::string& config_digest, const fs::path& out_dir) {
  CorpusManifest m;
  m.name = plan.name;
  m.alphabet = inv.alphabet();
  m.seed = master;
  m.config_digest = config_digest;
  const fs::path dir = out_dir / plan.name;
  fs::create_directories(dir / "feats");

  for (const auto& [split, count] : plan.splits) {
    for (int i = 0; i < count; ++i) {
      char idbuf[64];
      std::snprintf(idbuf, sizeof(idbuf), "%s-%s-%04d", plan.name.c_str(),
                    split.c_str(), i);
      Utterance u;
      u.id = idbuf;
      u.domain = plan.domain;
      u.split = split;

      const std::string text_stream =
          plan.parallel_text ? "text.par." + split + "." + std::to_string(i)
                             : "text." + plan.name + "." + split + "." +
                                   std::to_string(i);
      num::Rng text_rng = num::derive_rng(master, text_stream);
      u.transcript = sample_text(inv, cfg.grammar, text_rng);

      num::Rng render_rng = num::derive_rng(master, "render." + plan.name + "." + u.id);
      num::Matrix feats;
      if (plan.channel != nullptr) {
        feats = synth_imperfect(u.transcript, *plan.channel, *plan.transform,
                                inv, cfg.feat_dim, render_rng)
                    .feats;
      } else {
        feats = render(u.transcript, inv, *plan.transform, cfg.feat_dim,
                       render_rng);
      }
      u.n_frames = feats.rows;
      u.feat_path = "feats/" + u.id + ".feat";
      write_feat(dir / u.feat_path, feats);
      m.utts.push_back(std::move(u));
    }
  }
  m.validate();
  save_manifest(m, dir);
}

}  // namespace

void CorpusConfig::validate() const {
  grammar.validate();
  tts_like.validate();
  vc_like.validate();
  healthy.validate();
  elsimu.validate();
  elreal.validate();
  if (feat_dim < 8) throw ConfigError("feat_dim too small");
  for (int v : {pretrain_train, if_utts, target_train}) {
    if (v < 1) throw ConfigError("corpus sizes must be positive");
  }
  if (pretrain_dev < 0 || pretrain_test < 0 || target_dev < 0 || target_test < 0) {
    throw ConfigError("split sizes must be non-negative");
  }
}

json CorpusConfig::to_json() const {
  return json{
      {"feat_dim", feat_dim},
      {"grammar",
       {{"word_count", {grammar.word_count_min, grammar.word_count_max}},
        {"word_len", {grammar.word_len_min, grammar.word_len_max}},
        {"start_vowel_prob", grammar.start_vowel_prob},
        {"vowel_after_consonant", grammar.vowel_after_consonant},
        {"vowel_after_vowel", grammar.vowel_after_vowel}}},
      {"channels",
       {{"tts_like", channel_to_json(tts_like)},
        {"vc_like", channel_to_json(vc_like)}}},
      {"transforms",
       {{"healthy", transform_to_json(healthy)},
        {"elsimu", transform_to_json(elsimu)},
        {"elreal", transform_to_json(elreal)}}},
      {"sizes",
       {{"pretrain", {pretrain_train, pretrain_dev, pretrain_test}},
        {"if", if_utts},
        {"target", {target_train, target_dev, target_test}}}},
      {"normalize", normalize}};
}

CorpusConfig CorpusConfig::from_json(const json& j) {
  CorpusConfig cfg;
  config::check_keys(
      j, {"feat_dim", "grammar", "channels", "transforms", "sizes", "normalize"},
      "corpus config");
  cfg.feat_dim = config::get_or(j, "feat_dim", cfg.feat_dim);
  cfg.normalize = config::get_or(j, "normalize", cfg.normalize);
  if (j.contains("grammar")) {
    const json& g = j["grammar"];
    config::check_keys(g,
                       {"word_count", "word_len", "start_vowel_prob",
                        "vowel_after_consonant", "vowel_after_vowel"},
                       "grammar");
    if (g.contains("word_count")) {
      const auto v = g["word_count"].get<std::vector<int>>();
      if (v.size() != 2) throw ConfigError("grammar.word_count must be [min, max]");
      cfg.grammar.word_count_min = v[0];
      cfg.grammar.word_count_max = v[1];
    }
    if (g.contains("word_len")) {
      const auto v = g["word_len"].get<std::vector<int>>();
      if (v.size() != 2) throw ConfigError("grammar.word_len must be [min, max]");
      cfg.grammar.word_len_min = v[0];
      cfg.grammar.word_len_max = v[1];
    }
    cfg.grammar.start_vowel_prob =
        config::get_or(g, "start_vowel_prob", cfg.grammar.start_vowel_prob);
    cfg.grammar.vowel_after_consonant = config::get_or(
        g, "vowel_after_consonant", cfg.grammar.vowel_after_consonant);
    cfg.grammar.vowel_after_vowel =
        config::get_or(g, "vowel_after_vowel", cfg.grammar.vowel_after_vowel);
  }
  if (j.contains("channels")) {
    const json& c = j["channels"];
    config::check_keys(c, {"tts_like", "vc_like"}, "channels");
    if (c.contains("tts_like")) {
      cfg.tts_like = channel_from_json(cfg.tts_like, c["tts_like"], "channels.tts_like");
    }
    if (c.contains("vc_like")) {
      cfg.vc_like = channel_from_json(cfg.vc_like, c["vc_like"], "channels.vc_like");
    }
  }
  if (j.contains("transforms")) {
    const json& t = j["transforms"];
    config::check_keys(t, {"healthy", "elsimu", "elreal"}, "transforms");
    if (t.contains("healthy")) {
      cfg.healthy = transform_from_json(cfg.healthy, t["healthy"], "transforms.healthy");
    }
    if (t.contains("elsimu")) {
      cfg.elsimu = transform_from_json(cfg.elsimu, t["elsimu"], "transforms.elsimu");
    }
    if (t.contains("elreal")) {
      cfg.elreal = transform_from_json(cfg.elreal, t["elreal"], "transforms.elreal");
    }
  }
  if (j.contains("sizes")) {
    const json& s = j["sizes"];
    config::check_keys(s, {"pretrain", "if", "target"}, "sizes");
    if (s.contains("pretrain")) {
      const auto v = s["pretrain"].get<std::vector<int>>();
      if (v.size() != 3) throw ConfigError("sizes.pretrain must be [train, dev, test]");
      cfg.pretrain_train = v[0];
      cfg.pretrain_dev = v[1];
      cfg.pretrain_test = v[2];
    }
    cfg.if_utts = config::get_or(s, "if", cfg.if_utts);
    if (s.contains("target")) {
      const auto v = s["target"].get<std::vector<int>>();
      if (v.size() != 3) throw ConfigError("sizes.target must be [train, dev, test]");
      cfg.target_train = v[0];
      cfg.target_dev = v[1];
      cfg.target_test = v[2];
    }
  }
  cfg.validate();
  return cfg;
}

std::vector<std::string> all_corpus_names() {
  return {kPretrain,      kIfTts,        kIfVc,      kIfSimuClean,
          kTargetElreal,  kTargetElsimu, kHealthyPar};
}

void build_corpus(const CorpusConfig& cfg, std::uint64_t master_seed,
                  const fs::path& out_dir) {
  cfg.validate();
  const Inventory inv = Inventory::standard(cfg.feat_dim);
  fs::create_directories(out_dir);

  const json resolved = cfg.to_json();
  const std::string digest = config::canonical_digest(resolved);
  {
    std::ofstream os(out_dir / "config.json", std::ios::trunc);
    os << resolved.dump(2) << "\n";
  }

  const ErrorChannelConfig clean = ErrorChannelConfig::clean();

  std::vector<CorpusPlan> plans;
  plans.push_back({kPretrain,
                   "HEALTHY",
                   {{"train", cfg.pretrain_train},
                    {"dev", cfg.pretrain_dev},
                    {"test", cfg.pretrain_test}},
                   false,
                   &cfg.healthy,
                   nullptr});
  // Intermediate corpora: EL-flavored renders of channel-corrupted text,
  // paired with clean transcripts. No dev split: IF runs fixed epochs.
  plans.push_back({kIfTts, "ELSIMU", {{"train", cfg.if_utts}}, false,
                   &cfg.elsimu, &cfg.tts_like});
  plans.push_back({kIfVc, "ELSIMU", {{"train", cfg.if_utts}}, false,
                   &cfg.elsimu, &cfg.vc_like});
  plans.push_back({kIfSimuClean, "ELSIMU", {{"train", cfg.if_utts}}, false,
                   &cfg.elsimu, &clean});
  // Parallel target/analysis corpora share texts per (split, index).
  const std::vector<std::pair<std::string, int>> target_splits{
      {"train", cfg.target_train}, {"dev", cfg.target_dev}, {"test", cfg.target_test}};
  plans.push_back({kTargetElreal, "ELREAL", target_splits, true, &cfg.elreal,
                   nullptr});
  plans.push_back({kTargetElsimu, "ELSIMU", target_splits, true, &cfg.elsimu,
                   nullptr});
  plans.push_back({kHealthyPar, "HEALTHY", target_splits, true, &cfg.healthy,
                   nullptr});

  for (const CorpusPlan& plan : plans) {
    generate_one(plan, cfg, inv, master_seed, digest, out_dir);
  }

  if (cfg.normalize) {
    CorpusManifest pretrain = load_manifest(out_dir / kPretrain);
    const FeatureStats stats = compute_feature_stats(pretrain, "train");
    save_stats(stats, out_dir / "stats.json");
    for (const std::string& name : all_corpus_names()) {
      CorpusManifest m = load_manifest(out_dir / name);
      apply_normalization(m, stats);
    }
  }
}

}  // namespace midtune::corpus
