// midtune/eval/cer.hpp

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
#include <string_view>
#include <vector>

namespace midtune::eval {

// Levenshtein distance, unit costs.
int edit_distance(std::string_view a, std::string_view b);

struct UttEval {
  std::string id;
  std::string ref;
  std::string hyp;
  int edits = 0;
  int ref_len = 0;
};

struct CerResult {
  double cer = 0.0;  // sum(edits) / sum(ref_len); may exceed 1.0
  long long total_edits = 0;
  long long total_ref_len = 0;
  std::vector<UttEval> utts;
};

// Corpus-level aggregation. Empty reference -> DataError.
CerResult aggregate_cer(std::vector<UttEval> utts);

// TSV: id, ref, hyp, edits, ref_len.
std::string eval_table_tsv(const CerResult& r);

}  // namespace midtune::eval
