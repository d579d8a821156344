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
// IPA segment model: a distinctive-feature bundle per sound, a built-in
// feature chart, a greedy longest-match tokenizer, and feature matching with
// underspecification (an underspecified feature matches any value).

#ifndef HHY_IPA_HPP_
#define HHY_IPA_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hhy/errors.hpp"
#include "hhy/utf8.hpp"

namespace hhy {

enum class Kind { kConsonant, kVowel };

enum class Place {
  kBilabial,
  kLabiodental,
  kDental,
  kAlveolar,
  kPostalveolar,
  kAlveopalatal,
  kRetroflex,
  kPalatal,
  kVelar,
  kPostvelar,
  kGlottal,
};

enum class Manner {
  kStop,
  kAffricate,
  kFricative,
  kNasal,
  kTrill,
  kTap,
  kLateralApproximant,
  kLateralFricative,
  kApproximant,
};

enum class Release { kReleased, kUnreleased, kUnknown };

enum class Height { kClose, kCloseMid, kMid, kOpenMid, kOpen };

enum class Backness { kFront, kCentral, kBack };

// Bits for Segment::underspecified.
enum Feature : unsigned {
  kFeatVoicing = 1u << 0,
  kFeatAspiration = 1u << 1,
  kFeatPlace = 1u << 2,
  kFeatManner = 1u << 3,
  kFeatRelease = 1u << 4,
  kFeatLength = 1u << 5,
  kFeatHeight = 1u << 6,
  kFeatBackness = 1u << 7,
  kFeatRounding = 1u << 8,
};

struct Segment {
  std::string symbol;  // base IPA symbol, no diacritics
  Kind kind = Kind::kConsonant;
  // Consonant features.
  Place place = Place::kAlveolar;
  Manner manner = Manner::kStop;
  bool aspirated = false;
  Release released = Release::kUnknown;  // meaningful for stops/affricates
  // Vowel features.
  Height height = Height::kOpen;
  Backness backness = Backness::kCentral;
  bool rounded = false;
  // Shared.
  bool voiced = false;
  bool is_long = false;
  unsigned underspecified = 0;

  bool IsOpen(Feature f) const { return (underspecified & f) != 0; }
  bool IsConsonant() const { return kind == Kind::kConsonant; }
  bool IsVowel() const { return kind == Kind::kVowel; }
  bool IsStopLike() const {
    return IsConsonant() &&
           (manner == Manner::kStop || manner == Manner::kAffricate);
  }
  bool IsContinuant() const {
    return IsConsonant() && manner != Manner::kStop &&
           manner != Manner::kAffricate && manner != Manner::kNasal;
  }
  bool IsGlide() const {
    return IsConsonant() && (symbol == "j" || symbol == "w");
  }
  bool IsNasal() const { return IsConsonant() && manner == Manner::kNasal; }

  bool operator==(const Segment& o) const {
    if (symbol != o.symbol || kind != o.kind || is_long != o.is_long ||
        underspecified != o.underspecified || voiced != o.voiced)
      return false;
    if (kind == Kind::kConsonant)
      return place == o.place && manner == o.manner &&
             aspirated == o.aspirated && released == o.released;
    return height == o.height && backness == o.backness &&
           rounded == o.rounded;
  }
};

using Word = std::vector<Segment>;

// True when every feature specified on both sides agrees. Underspecified
// features wildcard-match; so does an unknown release on a stop. Reflexive
// and symmetric but not transitive once underspecification enters.
inline bool FeaturesMatch(const Segment& a, const Segment& b) {
  if (a.kind != b.kind) return false;
  auto open = [&](Feature f) { return a.IsOpen(f) || b.IsOpen(f); };
  if (!open(kFeatLength) && a.is_long != b.is_long) return false;
  if (!open(kFeatVoicing) && a.voiced != b.voiced) return false;
  if (a.kind == Kind::kConsonant) {
    if (!open(kFeatPlace) && a.place != b.place) return false;
    if (!open(kFeatManner) && a.manner != b.manner) return false;
    if (!open(kFeatAspiration) && a.aspirated != b.aspirated) return false;
    if (a.IsStopLike() && b.IsStopLike() && !open(kFeatRelease)) {
      if (a.released != Release::kUnknown && b.released != Release::kUnknown &&
          a.released != b.released)
        return false;
    }
    return true;
  }
  if (!open(kFeatHeight) && a.height != b.height) return false;
  if (!open(kFeatBackness) && a.backness != b.backness) return false;
  if (!open(kFeatRounding) && a.rounded != b.rounded) return false;
  return true;
}

namespace detail {

inline Segment Cons(const char* sym, Place p, Manner m, bool voiced) {
  Segment s;
  s.symbol = sym;
  s.kind = Kind::kConsonant;
  s.place = p;
  s.manner = m;
  s.voiced = voiced;
  s.released = (m == Manner::kStop || m == Manner::kAffricate)
                   ? Release::kUnknown
                   : Release::kReleased;
  return s;
}

inline Segment Vow(const char* sym, Height h, Backness b, bool rounded) {
  Segment s;
  s.symbol = sym;
  s.kind = Kind::kVowel;
  s.height = h;
  s.backness = b;
  s.rounded = rounded;
  s.voiced = true;
  return s;
}

inline std::map<std::string, Segment> BuildChart() {
  using enum Place;
  using enum Manner;
  using enum Height;
  using enum Backness;
  std::map<std::string, Segment> t;
  auto c = [&](const char* s, Place p, Manner m, bool v) {
    t[s] = Cons(s, p, m, v);
  };
  auto v = [&](const char* s, Height h, Backness b, bool r) {
    t[s] = Vow(s, h, b, r);
  };
  // Stops.
  c("p", kBilabial, kStop, false);
  c("b", kBilabial, kStop, true);
  c("t", kAlveolar, kStop, false);
  c("d", kAlveolar, kStop, true);
  c("ʈ", kRetroflex, kStop, false);
  c("ɖ", kRetroflex, kStop, true);
  c("c", kPalatal, kStop, false);
  c("ɟ", kPalatal, kStop, true);
  c("k", kVelar, kStop, false);
  c("g", kVelar, kStop, true);
  c("q", kPostvelar, kStop, false);
  c("ɢ", kPostvelar, kStop, true);
  c("ʔ", kGlottal, kStop, false);
  // Nasals.
  c("m", kBilabial, kNasal, true);
  c("ɱ", kLabiodental, kNasal, true);
  c("n", kAlveolar, kNasal, true);
  c("ɳ", kRetroflex, kNasal, true);
  c("ɲ", kPalatal, kNasal, true);
  c("ŋ", kVelar, kNasal, true);
  c("ɴ", kPostvelar, kNasal, true);
  // Fricatives.
  c("ɸ", kBilabial, kFricative, false);
  c("β", kBilabial, kFricative, true);
  c("f", kLabiodental, kFricative, false);
  c("v", kLabiodental, kFricative, true);
  c("θ", kDental, kFricative, false);
  c("ð", kDental, kFricative, true);
  c("s", kAlveolar, kFricative, false);
  c("z", kAlveolar, kFricative, true);
  c("ʃ", kPostalveolar, kFricative, false);
  c("ʒ", kPostalveolar, kFricative, true);
  c("ɕ", kAlveopalatal, kFricative, false);
  c("ʑ", kAlveopalatal, kFricative, true);
  c("ʂ", kRetroflex, kFricative, false);
  c("ʐ", kRetroflex, kFricative, true);
  c("ç", kPalatal, kFricative, false);
  c("ʝ", kPalatal, kFricative, true);
  c("x", kVelar, kFricative, false);
  c("ɣ", kVelar, kFricative, true);
  c("χ", kPostvelar, kFricative, false);
  c("ʁ", kPostvelar, kFricative, true);
  c("h", kGlottal, kFricative, false);
  c("ɦ", kGlottal, kFricative, true);
  // Affricates are single segments; correspondence tables treat them as
  // units, so the tokenizer matches the two-letter forms greedily.
  c("ts", kAlveolar, kAffricate, false);
  c("dz", kAlveolar, kAffricate, true);
  c("tʃ", kPostalveolar, kAffricate, false);
  c("dʒ", kPostalveolar, kAffricate, true);
  c("tɕ", kAlveopalatal, kAffricate, false);
  c("dʑ", kAlveopalatal, kAffricate, true);
  c("tʂ", kRetroflex, kAffricate, false);
  c("dʐ", kRetroflex, kAffricate, true);
  // Liquids, taps, approximants.
  c("r", kAlveolar, kTrill, true);
  c("ʀ", kPostvelar, kTrill, true);
  c("ɾ", kAlveolar, kTap, true);
  c("ɽ", kRetroflex, kTap, true);
  c("l", kAlveolar, kLateralApproximant, true);
  c("ɭ", kRetroflex, kLateralApproximant, true);
  c("ʎ", kPalatal, kLateralApproximant, true);
  c("ɬ", kAlveolar, kLateralFricative, false);
  c("ɮ", kAlveolar, kLateralFricative, true);
  c("ɹ", kAlveolar, kApproximant, true);
  c("ʋ", kLabiodental, kApproximant, true);
  c("j", kPalatal, kApproximant, true);
  c("ɥ", kPalatal, kApproximant, true);
  c("ɰ", kVelar, kApproximant, true);
  c("w", kVelar, kApproximant, true);
  // Vowels.
  v("i", kClose, kFront, false);
  v("y", kClose, kFront, true);
  v("ɨ", kClose, kCentral, false);
  v("ʉ", kClose, kCentral, true);
  v("ɯ", kClose, kBack, false);
  v("u", kClose, kBack, true);
  // Apical rime vowel; kept distinct by symbol, featurally close central.
  v("ɿ", kClose, kCentral, false);
  v("ɪ", kCloseMid, kFront, false);
  v("ʏ", kCloseMid, kFront, true);
  v("ʊ", kCloseMid, kBack, true);
  v("e", kCloseMid, kFront, false);
  v("ø", kCloseMid, kFront, true);
  v("ɘ", kCloseMid, kCentral, false);
  v("ɵ", kCloseMid, kCentral, true);
  v("ɤ", kCloseMid, kBack, false);
  v("o", kCloseMid, kBack, true);
  v("ə", kMid, kCentral, false);
  v("ɛ", kOpenMid, kFront, false);
  v("œ", kOpenMid, kFront, true);
  v("ɜ", kOpenMid, kCentral, false);
  v("ɞ", kOpenMid, kCentral, true);
  v("ʌ", kOpenMid, kBack, false);
  v("ɔ", kOpenMid, kBack, true);
  v("æ", kOpen, kFront, false);
  v("a", kOpen, kFront, false);
  v("ɶ", kOpen, kFront, true);
  v("ɐ", kOpen, kCentral, false);
  v("ä", kOpen, kCentral, false);
  v("ɑ", kOpen, kBack, false);
  v("ɒ", kOpen, kBack, true);
  return t;
}

// Single-code-point ligatures normalized to the two-letter chart keys.
inline const std::map<char32_t, std::string>& Ligatures() {
  static const std::map<char32_t, std::string> m = {
      {0x02A7, "tʃ"},  // ʧ
      {0x02A4, "dʒ"},  // ʤ
      {0x02A6, "ts"},  // ʦ
      {0x02A3, "dz"},  // ʣ
      {0x02A8, "tɕ"},  // ʨ
      {0x02A5, "dʑ"},  // ʥ
      {0x0261, "g"},   // ɡ
  };
  return m;
}

}  // namespace detail

inline const std::map<std::string, Segment>& FeatureChart() {
  static const std::map<std::string, Segment> chart = detail::BuildChart();
  return chart;
}

// Canonical rendering: base symbol, then ʰ, ̚, voiceless ring, ː.
inline std::string Render(const Segment& s) {
  std::string out = s.symbol;
  if (s.IsConsonant() && s.aspirated) out += "ʰ";
  if (s.IsStopLike() && s.released == Release::kUnreleased) out += "̚";
  // The chart default for this base symbol decides whether a voiceless ring
  // is needed (r̥) or implied (s).
  auto it = FeatureChart().find(s.symbol);
  if (it != FeatureChart().end() && it->second.voiced && !s.voiced &&
      !s.IsOpen(kFeatVoicing))
    out += "̥";
  if (s.is_long) out += "ː";
  return out;
}

inline std::string Render(const Word& w) {
  std::string out;
  for (const auto& s : w) out += Render(s);
  return out;
}

// Greedy longest-match tokenization of one whitespace-free word. Diacritics
// attach to the preceding base segment.
inline Word ParseIpa(std::string_view text) {
  const auto& chart = FeatureChart();
  const CodePoints cps = Utf8Decode(text);
  Word out;
  std::size_t i = 0;
  const std::size_t n = cps.cps.size();
  auto offset = [&](std::size_t k) {
    return k < n ? cps.offsets[k] : text.size();
  };
  while (i < n) {
    const char32_t cp = cps.cps[i];
    switch (cp) {
      case 0x02B0:  // aspiration
        if (out.empty() || out.back().IsVowel())
          throw IpaParseError(offset(i), "dangling aspiration mark");
        out.back().aspirated = true;
        ++i;
        continue;
      case 0x02D0:  // length
        if (out.empty()) throw IpaParseError(offset(i), "dangling length mark");
        out.back().is_long = true;
        ++i;
        continue;
      case 0x031A:  // unreleased
        if (out.empty() || !out.back().IsStopLike())
          throw IpaParseError(offset(i), "dangling unreleased mark");
        out.back().released = Release::kUnreleased;
        ++i;
        continue;
      case 0x0325:  // voiceless (ring below / ring above)
      case 0x030A:
        if (out.empty())
          throw IpaParseError(offset(i), "dangling voiceless mark");
        out.back().voiced = false;
        ++i;
        continue;
      case 0x0361:  // tie bar, absorbed between affricate halves
        ++i;
        continue;
      default:
        break;
    }
    std::string one;
    auto lig = detail::Ligatures().find(cp);
    if (lig != detail::Ligatures().end()) {
      out.push_back(chart.at(lig->second));
      ++i;
      continue;
    }
    one = Utf8Encode(cp);
    // Longest match first: try base + following code point (skipping a tie
    // bar) so affricates come out as one segment.
    std::size_t j = i + 1;
    if (j < n && cps.cps[j] == 0x0361) ++j;
    if (j < n) {
      char32_t next = cps.cps[j];
      std::string two = one + (detail::Ligatures().count(next)
                                   ? detail::Ligatures().at(next)
                                   : Utf8Encode(next));
      auto it2 = chart.find(two);
      if (it2 != chart.end()) {
        out.push_back(it2->second);
        i = j + 1;
        continue;
      }
    }
    auto it1 = chart.find(one);
    if (it1 == chart.end())
      throw IpaParseError(offset(i), "unknown IPA symbol '" + one + "'");
    out.push_back(it1->second);
    ++i;
  }
  return out;
}

}  // namespace hhy

#endif  // HHY_IPA_HPP_
