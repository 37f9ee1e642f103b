// Edit distance vs the exponential recursion oracle; corpus-level CER.

#include <algorithm>
#include <string>

#include "doctest.h"
#include "midtune/eval/cer.hpp"
#include "midtune/num/rng.hpp"
#include "midtune/util/errors.hpp"

using namespace midtune;
using namespace midtune::eval;
using midtune::num::Rng;

namespace {

// Oracle: plain exponential recursion, no memoization.
int ed_recursive(std::string_view a, std::string_view b) {
  if (a.empty()) return static_cast<int>(b.size());
  if (b.empty()) return static_cast<int>(a.size());
  const int sub = ed_recursive(a.substr(1), b.substr(1)) + (a[0] == b[0] ? 0 : 1);
  const int del = ed_recursive(a.substr(1), b) + 1;
  const int ins = ed_recursive(a, b.substr(1)) + 1;
  return std::min({sub, del, ins});
}

std::string random_string(Rng& rng, int max_len, const char* alphabet, int n) {
  const int len = rng.uniform_int(max_len + 1);
  std::string s;
  for (int i = 0; i < len; ++i) s.push_back(alphabet[rng.uniform_int(n)]);
  return s;
}

}  // namespace

TEST_CASE("edit_distance basics") {
  CHECK(edit_distance("abc", "abc") == 0);
  CHECK(edit_distance("", "") == 0);
  CHECK(edit_distance("abc", "axc") == 1);
  CHECK(edit_distance("abc", "") == 3);
  CHECK(edit_distance("", "xyz") == 3);
  CHECK(edit_distance("kitten", "sitting") == 3);
}

TEST_CASE("edit_distance matches the recursion oracle on 1000 random pairs") {
  Rng rng(123);
  for (int i = 0; i < 1000; ++i) {
    const std::string a = random_string(rng, 8, "abcd", 4);
    const std::string b = random_string(rng, 8, "abcd", 4);
    CHECK(edit_distance(a, b) == ed_recursive(a, b));
  }
}

TEST_CASE("edit_distance symmetry and triangle inequality") {
  Rng rng(321);
  for (int i = 0; i < 300; ++i) {
    const std::string a = random_string(rng, 8, "abc", 3);
    const std::string b = random_string(rng, 8, "abc", 3);
    const std::string c = random_string(rng, 8, "abc", 3);
    CHECK(edit_distance(a, b) == edit_distance(b, a));
    CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
  }
}

TEST_CASE("corpus CER aggregation") {
  // perfect hypotheses -> 0
  std::vector<UttEval> perfect{{"u1", "abcd", "abcd", 0, 0}, {"u2", "xy", "xy", 0, 0}};
  CHECK(aggregate_cer(perfect).cer == doctest::Approx(0.0));

  // CER can exceed 100%
  std::vector<UttEval> over{{"u1", "a", "bcdef", 0, 0}};
  CHECK(aggregate_cer(over).cer == doctest::Approx(5.0));

  // two refs of length 4 with 1 and 3 errors -> 0.5
  std::vector<UttEval> two{{"u1", "abcd", "abcx", 0, 0}, {"u2", "abcd", "axyz", 0, 0}};
  CHECK(aggregate_cer(two).cer == doctest::Approx(0.5));

  // empty reference is a data error
  std::vector<UttEval> bad{{"u1", "", "abc", 0, 0}};
  CHECK_THROWS_AS(aggregate_cer(bad), DataError);
}

TEST_CASE("corpus CER is permutation-invariant") {
  Rng rng(55);
  std::vector<UttEval> utts;
  for (int i = 0; i < 20; ++i) {
    UttEval u;
    u.id = "u" + std::to_string(i);
    u.ref = random_string(rng, 7, "abc", 3);
    if (u.ref.empty()) u.ref = "a";
    u.hyp = random_string(rng, 7, "abc", 3);
    utts.push_back(u);
  }
  const double cer1 = aggregate_cer(utts).cer;
  std::reverse(utts.begin(), utts.end());
  const double cer2 = aggregate_cer(utts).cer;
  CHECK(cer1 == doctest::Approx(cer2).epsilon(1e-15));
}

TEST_CASE("eval table TSV shape") {
  std::vector<UttEval> utts{{"u1", "ab", "ab", 0, 0}};
  const CerResult r = aggregate_cer(utts);
  const std::string tsv = eval_table_tsv(r);
  CHECK(tsv.find("id\tref\thyp\tedits\tref_len") == 0);
  CHECK(tsv.find("u1\tab\tab\t0\t2") != std::string::npos);
}
