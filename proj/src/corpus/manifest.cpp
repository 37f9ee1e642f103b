// midtune/corpus/manifest.cpp

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

#include "midtune/corpus/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "midtune/util/errors.hpp"
#include "midtune/util/sha256.hpp"

namespace midtune::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<const Utterance*> CorpusManifest::split(const std::string& name) const {
  std::vector<const Utterance*> out;
  for (const Utterance& u : utts) {
    if (u.split == name) out.push_back(&u);
  }
  return out;
}

const Utterance* CorpusManifest::find(const std::string& id) const {
  for (const Utterance& u : utts) {
    if (u.id == id) return &u;
  }
  return nullptr;
}

void CorpusManifest::validate() const {
  std::set<std::string> ids;
  for (const Utterance& u : utts) {
    if (!ids.insert(u.id).second) {
      throw DataError("duplicate utterance id: " + u.id);
    }
    if (u.transcript.empty()) {
      throw DataError("empty transcript for utterance " + u.id);
    }
    for (char c : u.transcript) {
      if (alphabet.find(c) == std::string::npos) {
        throw DataError("transcript symbol outside alphabet in " + u.id);
      }
    }
  }
}

void save_manifest(const CorpusManifest& m, const fs::path& dir) {
  fs::create_directories(dir);
  {
    const fs::path tmp = dir / "manifest.jsonl.tmp";
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw DataError("cannot write manifest in " + dir.string());
    for (const Utterance& u : m.utts) {
      json rec{{"id", u.id},
               {"domain", u.domain},
               {"split", u.split},
               {"transcript", u.transcript},
               {"feat_path", u.feat_path},
               {"n_frames", u.n_frames},
               {"label_mode", u.label_mode}};
      os << rec.dump() << "\n";
    }
    os.close();
    fs::rename(tmp, dir / "manifest.jsonl");
  }
  {
    json meta{{"name", m.name},
              {"alphabet", m.alphabet},
              {"seed", m.seed},
              {"config_digest", m.config_digest}};
    if (m.normalized) {
      meta["normalized"] = {{"stats_source", m.normalized->stats_source},
                            {"stats_digest", m.normalized->stats_digest}};
    } else {
      meta["normalized"] = nullptr;
    }
    const fs::path tmp = dir / "meta.json.tmp";
    std::ofstream os(tmp, std::ios::trunc);
    os << meta.dump(2) << "\n";
    os.close();
    fs::rename(tmp, dir / "meta.json");
  }
}

CorpusManifest load_manifest(const fs::path& dir) {
  CorpusManifest m;
  m.dir = dir;
  {
    std::ifstream is(dir / "meta.json");
    if (!is) throw DataError("missing meta.json in " + dir.string());
    json meta = json::parse(is);
    m.name = meta.at("name").get<std::string>();
    m.alphabet = meta.at("alphabet").get<std::string>();
    m.seed = meta.at("seed").get<std::uint64_t>();
    m.config_digest = meta.at("config_digest").get<std::string>();
    if (!meta.at("normalized").is_null()) {
      NormalizationInfo n;
      n.stats_source = meta["normalized"].at("stats_source").get<std::string>();
      n.stats_digest = meta["normalized"].at("stats_digest").get<std::string>();
      m.normalized = n;
    }
  }
  {
    std::ifstream is(dir / "manifest.jsonl");
    if (!is) throw DataError("missing manifest.jsonl in " + dir.string());
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      json rec = json::parse(line);
      Utterance u;
      u.id = rec.at("id").get<std::string>();
      u.domain = rec.at("domain").get<std::string>();
      u.split = rec.at("split").get<std::string>();
      u.transcript = rec.at("transcript").get<std::string>();
      u.feat_path = rec.at("feat_path").get<std::string>();
      u.n_frames = rec.at("n_frames").get<int>();
      u.label_mode = rec.value("label_mode", "CLEAN");
      m.utts.push_back(std::move(u));
    }
  }
  m.validate();
  return m;
}

fs::path feat_path(const CorpusManifest& m, const Utterance& u) {
  return m.dir / u.feat_path;
}

std::string FeatureStats::digest() const {
  std::ostringstream os;
  os << source;
  for (double v : mean) os << "," << v;
  for (double v : var) os << ";" << v;
  return util::sha256_hex(os.str());
}

void save_stats(const FeatureStats& s, const fs::path& path) {
  json j{{"mean", s.mean}, {"var", s.var}, {"source", s.source}};
  const fs::path tmp = path.string() + ".tmp";
  std::ofstream os(tmp, std::ios::trunc);
  if (!os) throw DataError("cannot write stats: " + path.string());
  os << j.dump(2) << "\n";
  os.close();
  fs::rename(tmp, path);
}

FeatureStats load_stats(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw DataError("missing stats file: " + path.string());
  json j = json::parse(is);
  FeatureStats s;
  s.mean = j.at("mean").get<std::vector<double>>();
  s.var = j.at("var").get<std::vector<double>>();
  s.source = j.at("source").get<std::string>();
  return s;
}

}  // namespace midtune::corpus
