// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Test-only brute-force oracle for the structure classifier. Enumerates
// every segmentation of a word into single-consonant ST blocks and
// syllable blocks matching (C)(G)V(N); a position is MT-eligible iff some
// complete segmentation covers it inside a syllable block. Kept independent
// of the gap-based enumerator it checks.

#ifndef HHY_TESTS_STRUCTURAL_ORACLE_H_
#define HHY_TESTS_STRUCTURAL_ORACLE_H_

#include <set>

#include "hhy/ipa.hpp"

namespace hhy {
namespace oracle {

inline bool Syllable(const Word& w, int i, int j, bool legacy_m) {
  auto cons = [&](int k) { return w[k].IsConsonant(); };
  auto vow = [&](int k) { return w[k].IsVowel(); };
  auto glide = [&](int k) { return cons(k) && w[k].IsGlide(); };
  auto nasal = [&](int k) {
    return cons(k) && w[k].IsNasal() &&
           (w[k].symbol == "n" || w[k].symbol == "ŋ" ||
            (legacy_m && w[k].symbol == "m"));
  };
  const int len = j - i;
  if (len == 1) return vow(i);
  if (len == 2) return (cons(i) && vow(i + 1)) || (vow(i) && nasal(i + 1));
  if (len == 3)
    return (cons(i) && glide(i + 1) && vow(i + 2)) ||
           (cons(i) && vow(i + 1) && nasal(i + 2));
  if (len == 4)
    return cons(i) && glide(i + 1) && vow(i + 2) && nasal(i + 3);
  return false;
}

inline bool Walk(const Word& w, int i, std::set<int>* covered,
                 std::set<int>* eligible, bool legacy_m) {
  const int n = static_cast<int>(w.size());
  if (i == n) {
    eligible->insert(covered->begin(), covered->end());
    return true;
  }
  bool any = false;
  if (w[i].IsConsonant()) any |= Walk(w, i + 1, covered, eligible, legacy_m);
  for (int j = i + 1; j <= n && j <= i + 4; ++j) {
    if (!Syllable(w, i, j, legacy_m)) continue;
    for (int k = i; k < j; ++k) covered->insert(k);
    any |= Walk(w, j, covered, eligible, legacy_m);
    for (int k = i; k < j; ++k) covered->erase(k);
  }
  return any;
}

// A parse needs a nucleus; an all-consonant word has no legal parse.
inline std::set<int> Eligible(const Word& w, bool* parseable,
                              bool legacy_m = false) {
  bool has_vowel = false;
  for (const auto& s : w) has_vowel = has_vowel || s.IsVowel();
  std::set<int> covered, eligible;
  const bool walked = Walk(w, 0, &covered, &eligible, legacy_m);
  *parseable = has_vowel && walked;
  return eligible;
}

}  // namespace oracle
}  // namespace hhy

#endif  // HHY_TESTS_STRUCTURAL_ORACLE_H_
