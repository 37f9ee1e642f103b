// midtune/corpus/featio.cpp

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

#include "midtune/corpus/featio.hpp"

#include <fstream>

#include "midtune/util/binio.hpp"

namespace midtune::corpus {

namespace fs = std::filesystem;

void write_feat(const fs::path& path, const num::Matrix& feats) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("cannot open for write: " + tmp.string());
    util::write_bytes(os, "FEAT", 4);
    util::write_le<std::uint32_t>(os, kFeatVersion);
    util::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(feats.rows));
    util::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(feats.cols));
    for (double v : feats.data) {
      util::write_le<float>(os, static_cast<float>(v));
    }
    if (!os) throw DataError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

num::Matrix read_feat(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open feature file: " + path.string());
  util::expect_magic(is, "FEAT", path.string());
  const auto version = util::read_le<std::uint32_t>(is);
  if (version != kFeatVersion) {
    throw DataError("unsupported feature file version in " + path.string());
  }
  const auto t = util::read_le<std::uint32_t>(is);
  const auto f = util::read_le<std::uint32_t>(is);
  if (t < 1 || f < 1 || t > (1u << 24) || f > (1u << 16)) {
    throw DataError("implausible feature dimensions in " + path.string());
  }
  num::Matrix m(static_cast<int>(t), static_cast<int>(f));
  for (double& v : m.data) {
    v = static_cast<double>(util::read_le<float>(is));
  }
  return m;
}

}  // namespace midtune::corpus
