// midtune/eval/cer.cpp

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

#include "midtune/eval/cer.hpp"

#include <algorithm>
#include <sstream>

#include "midtune/util/errors.hpp"

namespace midtune::eval {

int edit_distance(std::string_view a, std::string_view b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n == 0) return static_cast<int>(m);
  if (m == 0) return static_cast<int>(n);
  // Two-row DP.
  std::vector<int> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

CerResult aggregate_cer(std::vector<UttEval> utts) {
  CerResult r;
  for (UttEval& u : utts) {
    if (u.ref.empty()) {
      throw DataError("empty reference transcript for utterance " + u.id);
    }
    u.edits = edit_distance(u.hyp, u.ref);
    u.ref_len = static_cast<int>(u.ref.size());
    r.total_edits += u.edits;
    r.total_ref_len += u.ref_len;
  }
  r.cer = static_cast<double>(r.total_edits) / static_cast<double>(r.total_ref_len);
  r.utts = std::move(utts);
  return r;
}

std::string eval_table_tsv(const CerResult& r) {
  std::ostringstream os;
  os << "id\tref\thyp\tedits\tref_len\n";
  for (const UttEval& u : r.utts) {
    os << u.id << '\t' << u.ref << '\t' << u.hyp << '\t' << u.edits << '\t'
       << u.ref_len << '\n';
  }
  return os.str();
}

}  // namespace midtune::eval
