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
// Syllable-structure classification. A word is parsed against the Chinese
// syllable template (single onset, optional j/w medial, nucleus, nasal-only
// coda); consonants no parse can place in a template slot are supplementary
// transcription candidates, realized as ST only when a phonetic condition
// holds: voiced, voiceless continuant, or released voiceless stop.

#ifndef HHY_CLASSIFY_HPP_
#define HHY_CLASSIFY_HPP_

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hhy/errors.hpp"
#include "hhy/ipa.hpp"

namespace hhy {

enum class StructuralRole {
  kMtOnset,
  kMtNucleus,
  kMtMedialGlide,
  kMtCoda,
  kStCandidate,
};

inline const char* ToString(StructuralRole r) {
  switch (r) {
    case StructuralRole::kMtOnset: return "mt-onset";
    case StructuralRole::kMtNucleus: return "mt-nucleus";
    case StructuralRole::kMtMedialGlide: return "mt-medial-glide";
    case StructuralRole::kMtCoda: return "mt-coda";
    case StructuralRole::kStCandidate: return "st-candidate";
  }
  return "?";
}

enum class StCondition { kA, kB, kC, kNone };

inline const char* ToString(StCondition c) {
  switch (c) {
    case StCondition::kA: return "A-voiced";
    case StCondition::kB: return "B-voiceless-continuant";
    case StCondition::kC: return "C-released-voiceless-stop";
    case StCondition::kNone: return "none";
  }
  return "?";
}

enum class Verdict { kMt, kSt, kUnrepresented };

inline const char* ToString(Verdict v) {
  switch (v) {
    case Verdict::kMt: return "MT";
    case Verdict::kSt: return "ST";
    case Verdict::kUnrepresented: return "unrepresented";
  }
  return "?";
}

struct SlotClassification {
  int segment_index = 0;
  StructuralRole role = StructuralRole::kStCandidate;
  StCondition condition = StCondition::kNone;
  Verdict verdict = Verdict::kMt;
  bool ambiguous_medial = false;  // nasal that could equally be a coda
};

struct Syllable {
  std::optional<int> onset;
  std::optional<int> medial;
  int nucleus = 0;
  std::optional<int> coda;
};

struct MtParse {
  std::vector<Syllable> syllables;
  std::vector<int> st_slots;
  bool uses_legacy_m = false;

  int StCount() const { return static_cast<int>(st_slots.size()); }
};

struct ParseOptions {
  // Accept [m] as an MT coda. Always warning-level; the coda inventory of
  // the period is [n]/[ŋ] with residual [m] only.
  bool legacy_m_coda = false;
};

namespace detail {

inline bool CodaEligible(const Segment& s, const ParseOptions& opt) {
  if (!s.IsNasal()) return false;
  if (s.symbol == "n" || s.symbol == "ŋ") return true;
  return opt.legacy_m_coda && s.symbol == "m";
}

// One way to spend the consonants of a single inter-nucleus gap.
struct GapChoice {
  bool coda = false;    // first consonant becomes the left syllable's coda
  int onset = -1;       // local index or -1
  int medial = -1;      // local index or -1
};

inline std::vector<GapChoice> GapChoices(const Word& w,
                                         const std::vector<int>& cons,
                                         bool has_left, bool has_right,
                                         const ParseOptions& opt) {
  std::vector<GapChoice> out;
  const int m = static_cast<int>(cons.size());
  std::vector<bool> coda_opts = {false};
  if (has_left && m > 0 && CodaEligible(w[cons[0]], opt))
    coda_opts.push_back(true);
  for (bool coda : coda_opts) {
    const int first_free = coda ? 1 : 0;
    GapChoice base;
    base.coda = coda;
    out.push_back(base);  // everything else unassigned
    if (!has_right || m - first_free <= 0) continue;
    const int last = m - 1;
    GapChoice onset_only = base;
    onset_only.onset = last;
    out.push_back(onset_only);
    if (w[cons[last]].IsGlide()) {
      GapChoice medial_only = base;
      medial_only.medial = last;
      out.push_back(medial_only);
      if (last - 1 >= first_free) {
        GapChoice both = base;
        both.onset = last - 1;
        both.medial = last;
        out.push_back(both);
      }
    }
  }
  return out;
}

}  // namespace detail

// Enumerates every parse satisfying the template constraints, ordered by
// (fewest ST slots, then role preference left to right with onset before
// medial before coda before ST). The head of the list is the parse the
// classifier commits to.
inline std::vector<MtParse> EnumerateParses(const Word& w,
                                            ParseOptions opt = {}) {
  if (w.empty()) throw NoNucleusError();
  std::vector<int> nuclei;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i].IsVowel()) nuclei.push_back(i);
  if (nuclei.empty()) throw NoNucleusError();

  // Consonant indices per gap; gap g sits before nucleus g (the last gap
  // trails the final nucleus).
  const int k = static_cast<int>(nuclei.size());
  std::vector<std::vector<int>> gaps(k + 1);
  {
    int g = 0;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
      if (w[i].IsVowel()) {
        ++g;
        continue;
      }
      gaps[g].push_back(i);
    }
  }

  std::vector<std::vector<detail::GapChoice>> choices(k + 1);
  for (int g = 0; g <= k; ++g)
    choices[g] = detail::GapChoices(w, gaps[g], /*has_left=*/g > 0,
                                    /*has_right=*/g < k, opt);

  std::vector<MtParse> parses;
  std::vector<int> pick(k + 1, 0);
  while (true) {
    MtParse parse;
    parse.syllables.resize(k);
    for (int s = 0; s < k; ++s) parse.syllables[s].nucleus = nuclei[s];
    for (int g = 0; g <= k; ++g) {
      const auto& ch = choices[g][pick[g]];
      const auto& cons = gaps[g];
      for (int local = 0; local < static_cast<int>(cons.size()); ++local) {
        const int idx = cons[local];
        if (ch.coda && local == 0) {
          parse.syllables[g - 1].coda = idx;
          if (w[idx].symbol == "m") parse.uses_legacy_m = true;
        } else if (local == ch.onset) {
          parse.syllables[g].onset = idx;
        } else if (local == ch.medial) {
          parse.syllables[g].medial = idx;
        } else {
          parse.st_slots.push_back(idx);
        }
      }
    }
    std::sort(parse.st_slots.begin(), parse.st_slots.end());
    parses.push_back(std::move(parse));
    int g = k;
    while (g >= 0 && ++pick[g] == static_cast<int>(choices[g].size())) {
      pick[g] = 0;
      --g;
    }
    if (g < 0) break;
  }

  auto role_key = [&](const MtParse& p) {
    std::vector<int> key(w.size(), 0);
    for (const auto& s : p.syllables) {
      if (s.onset) key[*s.onset] = 0;
      if (s.medial) key[*s.medial] = 1;
      if (s.coda) key[*s.coda] = 2;
    }
    for (int i : p.st_slots) key[i] = 3;
    return key;
  };
  std::stable_sort(parses.begin(), parses.end(),
                   [&](const MtParse& a, const MtParse& b) {
                     if (a.StCount() != b.StCount())
                       return a.StCount() < b.StCount();
                     return role_key(a) < role_key(b);
                   });
  return parses;
}

// Structural roles from the first minimal parse. Equivalent to: a segment
// is an ST candidate iff no legal parse covers it in a template slot.
inline std::vector<SlotClassification> ClassifyPositions(
    const Word& w, ParseOptions opt = {}) {
  const auto parses = EnumerateParses(w, opt);
  const MtParse& best = parses.front();
  std::vector<SlotClassification> out(w.size());
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    out[i].segment_index = i;
  for (const auto& s : best.syllables) {
    out[s.nucleus].role = StructuralRole::kMtNucleus;
    if (s.onset) out[*s.onset].role = StructuralRole::kMtOnset;
    if (s.medial) out[*s.medial].role = StructuralRole::kMtMedialGlide;
    if (s.coda) out[*s.coda].role = StructuralRole::kMtCoda;
  }
  for (int i : best.st_slots) out[i].role = StructuralRole::kStCandidate;
  // A nasal the minimal parses place as an onset could equally be the left
  // syllable's coda; callers aligning against attested characters care.
  const int min_st = best.StCount();
  for (const auto& p : parses) {
    if (p.StCount() != min_st) break;
    for (const auto& s : p.syllables)
      if (s.coda && out[*s.coda].role == StructuralRole::kMtOnset)
        out[*s.coda].ambiguous_medial = true;
  }
  return out;
}

// First matching phonetic condition in the fixed order A, B, C. Voicing
// left open by a conversion ambiguity counts as voiced: either reading is
// ST-eligible, only the label differs. A stop whose release is unknown is
// taken as released; resolve per section policy first where it matters.
inline StCondition StConditionOf(const Segment& s) {
  if (!s.IsConsonant())
    throw DomainError("st condition is defined for consonants only");
  if (s.voiced || s.IsOpen(kFeatVoicing)) return StCondition::kA;
  if (s.IsContinuant()) return StCondition::kB;
  if (s.IsStopLike())
    return s.released == Release::kUnreleased ? StCondition::kNone
                                              : StCondition::kC;
  return StCondition::kNone;
}

enum class ReleasePolicy { kReleased, kUnreleased, kDefault };

inline const char* ToString(ReleasePolicy p) {
  switch (p) {
    case ReleasePolicy::kReleased: return "released";
    case ReleasePolicy::kUnreleased: return "unreleased";
    case ReleasePolicy::kDefault: return "default";
  }
  return "?";
}

struct ClassifiedWord {
  std::vector<SlotClassification> slots;
  MtParse parse;
  std::vector<std::string> warnings;
};

// Full per-segment verdicts: template roles, then the phonetic conditions
// on the ST candidates. Plain stops in ST position with unknown release are
// resolved by the section's release policy; the default policy treats them
// as released and says so.
inline ClassifiedWord ClassifyWord(const Word& w, ReleasePolicy policy,
                                   ParseOptions opt = {}) {
  ClassifiedWord result;
  result.slots = ClassifyPositions(w, opt);
  result.parse = EnumerateParses(w, opt).front();
  if (result.parse.uses_legacy_m)
    result.warnings.push_back(
        "legacy [m] coda accepted; the period's coda inventory is [n]/[ŋ]");
  for (auto& slot : result.slots) {
    if (slot.role != StructuralRole::kStCandidate) {
      slot.verdict = Verdict::kMt;
      continue;
    }
    Segment seg = w[slot.segment_index];
    if (seg.manner == Manner::kStop && !seg.voiced &&
        seg.released == Release::kUnknown) {
      switch (policy) {
        case ReleasePolicy::kReleased:
          seg.released = Release::kReleased;
          break;
        case ReleasePolicy::kUnreleased:
          seg.released = Release::kUnreleased;
          break;
        case ReleasePolicy::kDefault:
          seg.released = Release::kReleased;
          result.warnings.push_back(
              "release of '" + Render(w[slot.segment_index]) +
              "' unknown; treated as released");
          break;
      }
    }
    slot.condition = StConditionOf(seg);
    slot.verdict = slot.condition == StCondition::kNone
                       ? Verdict::kUnrepresented
                       : Verdict::kSt;
  }
  return result;
}

}  // namespace hhy

#endif  // HHY_CLASSIFY_HPP_
