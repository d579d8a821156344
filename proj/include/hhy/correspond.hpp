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
// Correspondence tables between target-language segments and Chinese
// categories: MT onset candidates, MT rime-label candidates over vowel
// regions, and ST character candidates. Rules marked excluded are loadable
// for audit but never consulted.

#ifndef HHY_CORRESPOND_HPP_
#define HHY_CORRESPOND_HPP_

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hhy/classify.hpp"
#include "hhy/errors.hpp"
#include "hhy/ipa.hpp"
#include "hhy/phonology.hpp"
#include "hhy/tsv.hpp"

namespace hhy {

enum class Section { kKO, kJA, kMN, kTB, kUY, kFA, kMS, kCM, kVN };

inline const char* ToString(Section s) {
  switch (s) {
    case Section::kKO: return "KO";
    case Section::kJA: return "JA";
    case Section::kMN: return "MN";
    case Section::kTB: return "TB";
    case Section::kUY: return "UY";
    case Section::kFA: return "FA";
    case Section::kMS: return "MS";
    case Section::kCM: return "CM";
    case Section::kVN: return "VN";
  }
  return "?";
}

inline std::optional<Section> SectionFromString(const std::string& s) {
  static const std::map<std::string, Section> m = {
      {"KO", Section::kKO}, {"JA", Section::kJA}, {"MN", Section::kMN},
      {"TB", Section::kTB}, {"UY", Section::kUY}, {"FA", Section::kFA},
      {"MS", Section::kMS}, {"CM", Section::kCM}, {"VN", Section::kVN}};
  auto it = m.find(s);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

struct SectionProfile {
  Section code = Section::kKO;
  std::string name;
  std::string convention;
  ReleasePolicy release = ReleasePolicy::kDefault;
  // Reliability flags for onset/nucleus/coda reconstructions (○ / △ / ×).
  std::string rel_onset, rel_nucleus, rel_coda;
  std::string anchor;
};

inline std::vector<SectionProfile> LoadSectionProfiles(
    const std::string& path) {
  std::vector<SectionProfile> out;
  for (const auto& row : ReadTsv(path, 8)) {
    SectionProfile p;
    auto sec = SectionFromString(row.fields[0]);
    if (!sec) throw LoadError(path, row.line, "unknown section code");
    p.code = *sec;
    p.name = row.fields[1];
    p.convention = row.fields[2];
    if (row.fields[3] == "released") p.release = ReleasePolicy::kReleased;
    else if (row.fields[3] == "unreleased") p.release = ReleasePolicy::kUnreleased;
    else if (row.fields[3] == "default") p.release = ReleasePolicy::kDefault;
    else throw LoadError(path, row.line, "bad release policy");
    p.rel_onset = row.fields[4];
    p.rel_nucleus = row.fields[5];
    p.rel_coda = row.fields[6];
    p.anchor = row.fields[7];
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Feature patterns, the left-hand side of a correspondence rule.

struct FeaturePattern {
  std::string text;
  struct Clause {
    std::string key;
    std::vector<std::string> values;  // alternatives
  };
  std::vector<Clause> clauses;

  static FeaturePattern Parse(const std::string& text, const std::string& file,
                              int line) {
    FeaturePattern p;
    p.text = text;
    for (const auto& tok : SplitOn(text, ' ')) {
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw LoadError(file, line, "bad pattern token '" + tok + "'");
      Clause c;
      c.key = tok.substr(0, eq);
      c.values = SplitOn(tok.substr(eq + 1), '|');
      if (c.values.empty())
        throw LoadError(file, line, "empty value in pattern '" + text + "'");
      p.clauses.push_back(std::move(c));
    }
    return p;
  }

  // Underspecified features wildcard-match the clause.
  bool Matches(const Segment& s) const {
    for (const auto& c : clauses) {
      if (c.key == "symbol") {
        bool any = false;
        for (const auto& v : c.values) any = any || v == s.symbol;
        if (!any) return false;
        continue;
      }
      if (c.key == "kind") {
        const char* k = s.IsVowel() ? "vowel" : "consonant";
        if (c.values[0] != k) return false;
        continue;
      }
      if (c.key == "manner") {
        if (!s.IsConsonant()) return false;
        if (s.IsOpen(kFeatManner)) continue;
        bool any = false;
        for (const auto& v : c.values) any = any || v == MannerName(s.manner);
        if (!any) return false;
        continue;
      }
      if (c.key == "place") {
        if (!s.IsConsonant()) return false;
        if (s.IsOpen(kFeatPlace)) continue;
        bool any = false;
        for (const auto& v : c.values) any = any || v == PlaceName(s.place);
        if (!any) return false;
        continue;
      }
      if (c.key == "voiced") {
        if (s.IsOpen(kFeatVoicing)) continue;
        if ((c.values[0] == "1") != s.voiced) return false;
        continue;
      }
      if (c.key == "aspirated") {
        if (s.IsOpen(kFeatAspiration)) continue;
        if ((c.values[0] == "1") != s.aspirated) return false;
        continue;
      }
      throw ConfigError("unknown pattern key '" + c.key + "'");
    }
    return true;
  }

  static const char* MannerName(Manner m) {
    switch (m) {
      case Manner::kStop: return "stop";
      case Manner::kAffricate: return "affricate";
      case Manner::kFricative: return "fricative";
      case Manner::kNasal: return "nasal";
      case Manner::kTrill: return "trill";
      case Manner::kTap: return "tap";
      case Manner::kLateralApproximant: return "lateral-approximant";
      case Manner::kLateralFricative: return "lateral-fricative";
      case Manner::kApproximant: return "approximant";
    }
    return "?";
  }
  static const char* PlaceName(Place p) {
    switch (p) {
      case Place::kBilabial: return "bilabial";
      case Place::kLabiodental: return "labiodental";
      case Place::kDental: return "dental";
      case Place::kAlveolar: return "alveolar";
      case Place::kPostalveolar: return "postalveolar";
      case Place::kAlveopalatal: return "alveopalatal";
      case Place::kRetroflex: return "retroflex";
      case Place::kPalatal: return "palatal";
      case Place::kVelar: return "velar";
      case Place::kPostvelar: return "postvelar";
      case Place::kGlottal: return "glottal";
    }
    return "?";
  }
};

enum class Confidence { kAccepted, kLimited, kExcluded };

inline const char* ToString(Confidence c) {
  switch (c) {
    case Confidence::kAccepted: return "accepted";
    case Confidence::kLimited: return "limited";
    case Confidence::kExcluded: return "excluded";
  }
  return "?";
}

struct CandidateRef {
  std::string category;
  int rank = 1;  // 1 primary, 2 secondary
};

struct CorrespondenceRule {
  FeaturePattern pattern;
  std::vector<CandidateRef> categories;
  std::vector<Section> sections;  // empty = all
  Confidence confidence = Confidence::kAccepted;
  std::string anchor;

  bool AppliesTo(std::optional<Section> sec) const {
    if (sections.empty()) return true;
    if (!sec) return false;
    for (Section s : sections)
      if (s == *sec) return true;
    return false;
  }
};

struct VowelRegion {
  std::string label;
  std::string medial_req;  // empty, "j" or "w"
  bool mt = true;
  // height, backness, rounded; -1 is a wildcard.
  std::vector<std::array<int, 3>> cells;
  std::vector<Section> sections;  // empty = all
  Confidence confidence = Confidence::kAccepted;
  std::string anchor;

  bool Contains(const Segment& v) const {
    if (!v.IsVowel()) return false;
    for (const auto& c : cells) {
      if (c[0] >= 0 && !v.IsOpen(kFeatHeight) && c[0] != static_cast<int>(v.height)) continue;
      if (c[1] >= 0 && !v.IsOpen(kFeatBackness) && c[1] != static_cast<int>(v.backness)) continue;
      if (c[2] >= 0 && !v.IsOpen(kFeatRounding) && (c[2] == 1) != v.rounded) continue;
      return true;
    }
    return false;
  }
  bool AppliesTo(std::optional<Section> sec) const {
    if (sections.empty()) return true;
    if (!sec) return false;
    for (Section s : sections)
      if (s == *sec) return true;
    return false;
  }
};

namespace detail {

inline std::vector<Section> ParseSections(const std::string& s,
                                          const std::string& file, int line) {
  std::vector<Section> out;
  if (s == "all") return out;
  for (const auto& tok : SplitOn(s, ',')) {
    auto sec = SectionFromString(tok);
    if (!sec) throw LoadError(file, line, "unknown section code '" + tok + "'");
    out.push_back(*sec);
  }
  return out;
}

inline Confidence ParseConfidence(const std::string& s, const std::string& file,
                                  int line) {
  if (s == "accepted") return Confidence::kAccepted;
  if (s == "limited") return Confidence::kLimited;
  if (s == "excluded") return Confidence::kExcluded;
  throw LoadError(file, line, "unknown confidence '" + s + "'");
}

inline int HeightIndex(const std::string& s) {
  if (s == "close") return 0;
  if (s == "close-mid") return 1;
  if (s == "mid") return 2;
  if (s == "open-mid") return 3;
  if (s == "open") return 4;
  return -2;
}
inline int BacknessIndex(const std::string& s) {
  if (s == "front") return 0;
  if (s == "central") return 1;
  if (s == "back") return 2;
  return -2;
}

}  // namespace detail

inline std::vector<CorrespondenceRule> LoadRules(const std::string& path) {
  std::vector<CorrespondenceRule> out;
  for (const auto& row : ReadTsv(path, 5)) {
    CorrespondenceRule r;
    r.pattern = FeaturePattern::Parse(row.fields[0], path, row.line);
    for (const auto& tok : SplitOn(row.fields[1], ' ')) {
      CandidateRef ref;
      auto colon = tok.find(':');
      if (colon == std::string::npos) {
        ref.category = tok;
      } else {
        ref.category = tok.substr(0, colon);
        ref.rank = std::stoi(tok.substr(colon + 1));
      }
      r.categories.push_back(std::move(ref));
    }
    r.sections = detail::ParseSections(row.fields[2], path, row.line);
    r.confidence = detail::ParseConfidence(row.fields[3], path, row.line);
    r.anchor = row.fields[4];
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<VowelRegion> LoadVowelRegions(const std::string& path) {
  std::vector<VowelRegion> out;
  for (const auto& row : ReadTsv(path, 7)) {
    VowelRegion v;
    v.label = row.fields[0];
    if (row.fields[1] != "-") v.medial_req = row.fields[1];
    if (row.fields[2] == "mt") v.mt = true;
    else if (row.fields[2] == "st-only") v.mt = false;
    else throw LoadError(path, row.line, "role must be mt or st-only");
    for (const auto& cell : SplitOn(row.fields[3], ',')) {
      auto parts = SplitOn(cell, ':');
      if (parts.size() != 3)
        throw LoadError(path, row.line, "bad cell '" + cell + "'");
      std::array<int, 3> c;
      c[0] = parts[0] == "*" ? -1 : detail::HeightIndex(parts[0]);
      c[1] = parts[1] == "*" ? -1 : detail::BacknessIndex(parts[1]);
      c[2] = parts[2] == "*" ? -1
             : parts[2] == "rounded" ? 1
             : parts[2] == "unrounded" ? 0
                                       : -2;
      if (c[0] == -2 || c[1] == -2 || c[2] == -2)
        throw LoadError(path, row.line, "bad cell '" + cell + "'");
      v.cells.push_back(c);
    }
    v.sections = detail::ParseSections(row.fields[4], path, row.line);
    v.confidence = detail::ParseConfidence(row.fields[5], path, row.line);
    v.anchor = row.fields[6];
    out.push_back(std::move(v));
  }
  return out;
}

struct RuleSet {
  std::vector<CorrespondenceRule> mt_shengmu;
  std::vector<CorrespondenceRule> st;
  std::vector<VowelRegion> regions;
  std::vector<SectionProfile> profiles;

  const SectionProfile& Profile(Section s) const {
    for (const auto& p : profiles)
      if (p.code == s) return p;
    throw ConfigError(std::string("no profile for section ") + ToString(s));
  }
};

// ---------------------------------------------------------------------------
// Candidate queries.

struct RankedCategory {
  std::string category;
  int rank = 1;
  Confidence confidence = Confidence::kAccepted;
};

namespace detail {

// Categories an excluded row rejects for this segment and section; the
// rejection wins over any other row that would offer the same category.
inline std::set<std::string> ExcludedCategories(
    const std::vector<CorrespondenceRule>& rules, const Segment& seg,
    std::optional<Section> section) {
  std::set<std::string> out;
  for (const auto& rule : rules) {
    if (rule.confidence != Confidence::kExcluded) continue;
    if (!rule.AppliesTo(section)) continue;
    if (!rule.pattern.Matches(seg)) continue;
    for (const auto& ref : rule.categories) out.insert(ref.category);
  }
  return out;
}

}  // namespace detail

// Ordered MT onset candidates for a consonant. An empty result is a valid
// answer: the segment has no main-transcription onset.
inline std::vector<RankedCategory> MtShengmuCandidates(
    const RuleSet& rules, const Segment& seg,
    std::optional<Section> section = std::nullopt) {
  const auto vetoed = detail::ExcludedCategories(rules.mt_shengmu, seg, section);
  std::vector<RankedCategory> out;
  auto add = [&](const CandidateRef& ref, Confidence conf) {
    if (vetoed.count(ref.category)) return;
    for (const auto& existing : out)
      if (existing.category == ref.category) return;
    out.push_back({ref.category, ref.rank, conf});
  };
  for (const auto& rule : rules.mt_shengmu) {
    if (rule.confidence == Confidence::kExcluded) continue;
    if (!rule.AppliesTo(section)) continue;
    if (!rule.pattern.Matches(seg)) continue;
    for (const auto& ref : rule.categories) add(ref, rule.confidence);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedCategory& a, const RankedCategory& b) {
                     return a.rank < b.rank;
                   });
  return out;
}

// Ordered rime-label candidates for a nucleus. Region rows gated on a
// medial only fire when the parse put that glide in the M slot; st-only
// regions never surface here.
inline std::vector<std::string> MtYunmuCandidates(
    const RuleSet& rules, const Segment& nucleus,
    const std::optional<Segment>& medial = std::nullopt,
    std::optional<Section> section = std::nullopt) {
  std::vector<std::string> out;
  auto add = [&](const std::string& label) {
    for (const auto& l : out)
      if (l == label) return;
    out.push_back(label);
  };
  for (const auto& region : rules.regions) {
    if (!region.mt || region.confidence == Confidence::kExcluded) continue;
    if (!region.AppliesTo(section)) continue;
    if (!region.medial_req.empty()) {
      if (!medial || medial->symbol != region.medial_req) continue;
    }
    if (region.Contains(nucleus)) add(region.label);
  }
  return out;
}

struct StCandidate {
  std::string ch;
  std::string category;
  int rank = 1;  // category rank: 1 primary family, 2 secondary
  Confidence confidence = Confidence::kAccepted;
};

// Ordered ST character candidates for a segment with verdict ST. Characters
// attested but rejected by the identification criteria never appear.
inline std::vector<StCandidate> StCharacterCandidates(
    const RuleSet& rules, const CharacterTable& chars, const Segment& seg,
    std::optional<Section> section = std::nullopt) {
  const auto vetoed = detail::ExcludedCategories(rules.st, seg, section);
  std::vector<std::pair<CandidateRef, Confidence>> cats;
  auto add_cat = [&](const CandidateRef& ref, Confidence conf) {
    if (vetoed.count(ref.category)) return;
    for (const auto& existing : cats)
      if (existing.first.category == ref.category) return;
    cats.push_back({ref, conf});
  };
  for (const auto& rule : rules.st) {
    if (rule.confidence == Confidence::kExcluded) continue;
    if (!rule.AppliesTo(section)) continue;
    if (!rule.pattern.Matches(seg)) continue;
    for (const auto& ref : rule.categories) add_cat(ref, rule.confidence);
  }
  std::stable_sort(cats.begin(), cats.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.rank < b.first.rank;
                   });
  std::vector<StCandidate> out;
  for (const auto& [ref, conf] : cats) {
    auto it = chars.st_candidates.find(ref.category);
    if (it == chars.st_candidates.end()) continue;
    for (const auto& ch : it->second)
      out.push_back({ch, ref.category, ref.rank, conf});
  }
  return out;
}

}  // namespace hhy

#endif  // HHY_CORRESPOND_HPP_
