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
// Whole-entry prediction and validation. Prediction composes the structure
// classifier with the correspondence tables into per-slot candidate sets;
// validation checks an attested entry against the same tables and reports
// findings with spec'd severities, including the ST-omission behavior:
// an omitted ST slot is an error unless the same morpheme is attested
// elsewhere in the corpus with its ST character, in which case it is the
// permitted omission the compilers practiced.

#ifndef HHY_ENGINE_HPP_
#define HHY_ENGINE_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hhy/align.hpp"
#include "hhy/classify.hpp"
#include "hhy/corpus.hpp"
#include "hhy/correspond.hpp"
#include "hhy/dataset.hpp"

namespace hhy {

// ---------------------------------------------------------------------------
// Prediction.

struct OnsetPrediction {
  std::optional<int> segment;  // none = zero-initial syllable
  std::vector<RankedCategory> candidates;
};

struct RimePrediction {
  int nucleus = -1;
  std::optional<int> medial;
  std::optional<int> coda;
  std::string coda_class;
  std::vector<std::string> labels;
};

struct SyllableSkeleton {
  OnsetPrediction onset;
  RimePrediction rime;
};

struct StSkeleton {
  int segment = -1;
  StCondition condition = StCondition::kNone;
  Verdict verdict = Verdict::kUnrepresented;
  std::vector<StCandidate> candidates;
};

struct WordPrediction {
  int word_index = 0;
  int parse_rank = 0;
  std::vector<SyllableSkeleton> syllables;
  std::vector<StSkeleton> st_slots;
};

struct Prediction {
  std::vector<WordPrediction> words;  // first minimal parse per word
  std::vector<std::string> warnings;
};

namespace detail {

inline WordPrediction PredictParse(const Engine& engine, const Word& word,
                                   const MtParse& parse, Section section,
                                   ReleasePolicy policy) {
  WordPrediction out;
  for (const auto& syl : parse.syllables) {
    SyllableSkeleton sk;
    if (syl.onset) {
      sk.onset.segment = *syl.onset;
      sk.onset.candidates = MtShengmuCandidates(engine.correspondences,
                                                word[*syl.onset], section);
      if (sk.onset.candidates.empty())
        throw DomainError("uncoverable segment '" +
                          Render(word[*syl.onset]) +
                          "': no main-transcription onset category");
    } else {
      sk.onset.candidates.push_back({"yun", 1, Confidence::kAccepted});
    }
    sk.rime.nucleus = syl.nucleus;
    sk.rime.medial = syl.medial;
    sk.rime.coda = syl.coda;
    if (syl.coda) sk.rime.coda_class = word[*syl.coda].symbol;
    std::optional<Segment> medial;
    if (syl.medial) medial = word[*syl.medial];
    sk.rime.labels = MtYunmuCandidates(engine.correspondences,
                                       word[syl.nucleus], medial, section);
    if (sk.rime.labels.empty())
      throw DomainError("uncoverable segment '" + Render(word[syl.nucleus]) +
                        "': no rime region contains it");
    out.syllables.push_back(std::move(sk));
  }
  for (int seg : parse.st_slots) {
    StSkeleton sk;
    sk.segment = seg;
    Segment s = word[seg];
    if (s.manner == Manner::kStop && !s.voiced &&
        s.released == Release::kUnknown)
      s.released = policy == ReleasePolicy::kUnreleased ? Release::kUnreleased
                                                        : Release::kReleased;
    sk.condition = StConditionOf(s);
    sk.verdict = sk.condition == StCondition::kNone ? Verdict::kUnrepresented
                                                    : Verdict::kSt;
    if (sk.verdict == Verdict::kSt)
      sk.candidates = StCharacterCandidates(engine.correspondences,
                                            engine.chars, s, section);
    out.st_slots.push_back(std::move(sk));
  }
  return out;
}

}  // namespace detail

// Candidate skeleton for each word, built on the first minimal parse.
// Deterministic given (words, section, tables).
inline Prediction Predict(const Engine& engine, const std::vector<Word>& words,
                          Section section) {
  const SectionProfile& profile = engine.Profile(section);
  ParseOptions popt;
  popt.legacy_m_coda = engine.options.legacy_m_coda;
  Prediction out;
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    auto parses = EnumerateParses(words[wi], popt);
    WordPrediction wp = detail::PredictParse(engine, words[wi], parses.front(),
                                             section, profile.release);
    wp.word_index = static_cast<int>(wi);
    out.words.push_back(std::move(wp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation.

enum class Severity { kError, kWarning, kInfo };

inline const char* ToString(Severity s) {
  switch (s) {
    case Severity::kError: return "error";
    case Severity::kWarning: return "warning";
    case Severity::kInfo: return "info";
  }
  return "?";
}

struct Finding {
  Severity severity = Severity::kInfo;
  std::string code;
  int char_ordinal = -1;  // -1 = whole entry
  int begin = -1, end = -1;
  std::string message;
};

struct ValidationReport {
  std::string index;
  Section section = Section::kKO;
  // Reliability of this section's reconstructions (onset/nucleus/coda,
  // from the per-section metadata), carried so findings can be weighed.
  std::string rel_onset, rel_nucleus, rel_coda;
  std::vector<Finding> findings;

  bool Conformant() const {
    for (const auto& f : findings)
      if (f.severity == Severity::kError) return false;
    return true;
  }
  int Count(Severity s) const {
    int n = 0;
    for (const auto& f : findings) n += f.severity == s;
    return n;
  }
  bool Has(const std::string& code) const {
    for (const auto& f : findings)
      if (f.code == code) return true;
    return false;
  }
};

// Morphemes attested with their ST slots realized, for the recoverability
// proxy behind permitted-st-omission. Keys are canonical segment strings of
// annotated morpheme spans plus whole words.
class WitnessIndex {
 public:
  void Add(const std::string& key, const std::string& entry_index) {
    realized_[key].insert(entry_index);
  }
  bool HasOther(const std::string& key, const std::string& self) const {
    auto it = realized_.find(key);
    if (it == realized_.end()) return false;
    for (const auto& idx : it->second)
      if (idx != self) return true;
    return false;
  }

 private:
  std::map<std::string, std::set<std::string>> realized_;
};

namespace detail {

inline std::string SpanKey(const Word& all, int begin, int end) {
  Word slice(all.begin() + begin, all.begin() + end + 1);
  return Render(slice);
}

// Spans whose ST realization makes an omission elsewhere recoverable: the
// annotated morphemes, plus each whole word.
inline std::vector<std::pair<int, int>> WitnessSpans(
    const CorpusEntry& entry, const EntryClassification& cls) {
  std::vector<std::pair<int, int>> spans;
  for (const auto& m : entry.morphemes) spans.push_back({m.begin, m.end});
  int begin = 0;
  for (std::size_t wi = 0; wi < entry.words.size(); ++wi) {
    const int len = static_cast<int>(entry.words[wi].size());
    spans.push_back({begin, begin + len - 1});
    begin += len;
  }
  (void)cls;
  return spans;
}

}  // namespace detail

inline WitnessIndex BuildWitnessIndex(const Engine& engine,
                                      const std::vector<CorpusEntry>& corpus) {
  WitnessIndex index;
  for (const auto& entry : corpus) {
    if (entry.unverified) continue;
    EntryClassification cls;
    EntryAlignment alignment;
    try {
      cls = ClassifyEntry(engine, entry);
      alignment = ResolveAlignment(engine, entry, cls);
    } catch (const Error&) {
      continue;  // unalignable entries witness nothing
    }
    std::set<int> covered_st;
    for (const auto& ca : alignment.chars) {
      const AlignmentUnit& u = cls.units[ca.unit];
      if (u.is_st && ca.units_covered == 1) covered_st.insert(u.st_segment);
    }
    for (const auto& [begin, end] : detail::WitnessSpans(entry, cls)) {
      bool all_st_realized = true;
      bool has_st = false;
      for (int seg = begin; seg <= end; ++seg) {
        if (cls.slots[seg].role != StructuralRole::kStCandidate) continue;
        if (cls.slots[seg].verdict != Verdict::kSt) continue;
        has_st = true;
        all_st_realized = all_st_realized && covered_st.count(seg) > 0;
      }
      if (has_st && all_st_realized)
        index.Add(detail::SpanKey(cls.all, begin, end), entry.index);
    }
  }
  return index;
}

namespace detail {

// Checks on supplied alignment spans that computed alignments cannot
// violate by construction.
inline void CheckSuppliedSpans(const CorpusEntry& entry,
                               const EntryClassification& cls,
                               std::vector<Finding>* findings) {
  for (const auto& span : *entry.alignment) {
    int consonants_before_nucleus = 0;
    bool seen_vowel = false;
    for (int seg = span.begin; seg <= span.end; ++seg) {
      if (cls.all[seg].IsVowel()) seen_vowel = true;
      else if (!seen_vowel) ++consonants_before_nucleus;
    }
    if (consonants_before_nucleus > 2 ||
        (consonants_before_nucleus == 2 &&
         !cls.all[span.begin + 1].IsGlide())) {
      findings->push_back({Severity::kError, "onset-cluster-in-mt",
                           span.char_ordinal, span.begin, span.end,
                           "main transcription cannot carry a complex onset"});
    }
    if (seen_vowel && span.end > span.begin) {
      const Segment& last = cls.all[span.end];
      if (last.IsConsonant() && !(last.symbol == "n" || last.symbol == "ŋ" ||
                                  last.symbol == "m")) {
        findings->push_back({Severity::kError, "mt-coda-violation",
                             span.char_ordinal, span.begin, span.end,
                             "coda '" + Render(last) +
                                 "' is outside the [n]/[ŋ] inventory"});
      }
    }
  }
}

}  // namespace detail

// Checks, in order: structural roles, category membership, ST omission,
// and ST characters on condition-less segments. An entry with no
// error-severity findings is conformant.
inline ValidationReport Validate(const Engine& engine, const CorpusEntry& entry,
                                 const WitnessIndex* witnesses = nullptr) {
  ValidationReport report;
  report.index = entry.index;
  report.section = entry.section;
  const SectionProfile& profile = engine.Profile(entry.section);
  report.rel_onset = profile.rel_onset;
  report.rel_nucleus = profile.rel_nucleus;
  report.rel_coda = profile.rel_coda;
  if (entry.unverified) {
    report.findings.push_back(
        {Severity::kInfo, "unverified-entry", -1, -1, -1,
         "full form cannot be verified; excluded from checks"});
    return report;
  }
  for (const auto& c : entry.characters)
    engine.chars.Lookup(c.ch);  // unresolvable characters abort via throw

  EntryClassification cls = ClassifyEntry(engine, entry);
  for (const auto& w : cls.warnings) {
    // Legacy-coda acceptance surfaces per covered unit below; the generic
    // classification warnings are the release-policy defaults.
    if (w.find("legacy") != std::string::npos) continue;
    report.findings.push_back(
        {Severity::kWarning, "release-defaulted", -1, -1, -1, w});
  }
  if (entry.alignment) {
    detail::CheckSuppliedSpans(entry, cls, &report.findings);
    // A structurally broken attested alignment ends the check here; the
    // categorical checks below presuppose template-shaped spans.
    if (!report.Conformant()) return report;
  }
  EntryAlignment alignment = ResolveAlignment(engine, entry, cls);

  std::set<int> covered_st;
  for (const auto& ca : alignment.chars) {
    const CharacterEntry& ce = engine.chars.Lookup(
        entry.characters[ca.char_ordinal].ch);
    const AlignmentUnit& unit = cls.units[ca.unit];
    if (unit.is_st) {
      covered_st.insert(unit.st_segment);
      const Segment& seg = cls.all[unit.st_segment];
      const SlotClassification& slot = cls.slots[unit.st_segment];
      if (slot.verdict == Verdict::kUnrepresented) {
        report.findings.push_back(
            {Severity::kError, "st-without-condition", ca.char_ordinal,
             unit.begin, unit.end,
             "'" + ce.ch + "' covers '" + Render(seg) +
                 "', which meets no ST phonetic condition"});
        continue;
      }
      auto candidates = StCharacterCandidates(engine.correspondences,
                                              engine.chars, seg,
                                              entry.section);
      const StCandidate* hit = nullptr;
      for (const auto& cand : candidates)
        if (cand.ch == ce.ch) {
          hit = &cand;
          break;
        }
      if (!hit) {
        report.findings.push_back(
            {Severity::kWarning, "noncanonical-candidate", ca.char_ordinal,
             unit.begin, unit.end,
             "'" + ce.ch + "' is not an identified ST character for '" +
                 Render(seg) + "'"});
      } else if (hit->rank > 1) {
        report.findings.push_back(
            {Severity::kInfo, "secondary-candidate", ca.char_ordinal,
             unit.begin, unit.end,
             "'" + ce.ch + "' covers '" + Render(seg) +
                 "' through a secondary correspondence"});
      }
      continue;
    }
    // Main transcription coverage.
    if (unit.coda_class == "m")
      report.findings.push_back(
          {Severity::kWarning, "legacy-m-coda", ca.char_ordinal, unit.begin,
           unit.end, "[m] coda accepted under the legacy-coda option"});
    if (ca.quality == 1) {
      report.findings.push_back(
          {Severity::kInfo, "secondary-candidate", ca.char_ordinal, unit.begin,
           unit.end,
           "'" + ce.ch + "' matches by features rather than the primary "
                         "candidate tables"});
    } else if (ca.quality >= 2) {
      report.findings.push_back(
          {Severity::kWarning, "noncanonical-candidate", ca.char_ordinal,
           unit.begin, unit.end,
           "'" + ce.ch + "' is outside the candidate sets for its span"});
    }
    if (engine.RimeLabel(ce) == "/i/")
      report.findings.push_back(
          {Severity::kInfo, "st-only-region-in-main", ca.char_ordinal,
           unit.begin, unit.end,
           "the /i/ region appears in the main layer here; recorded only"});
  }

  // Omitted and unrepresented slots.
  for (const auto& slot : cls.slots) {
    if (slot.role != StructuralRole::kStCandidate) continue;
    if (slot.verdict != Verdict::kSt) continue;
    if (covered_st.count(slot.segment_index)) continue;
    bool recoverable = false;
    if (witnesses) {
      for (const auto& [begin, end] : detail::WitnessSpans(entry, cls)) {
        if (slot.segment_index < begin || slot.segment_index > end) continue;
        if (witnesses->HasOther(detail::SpanKey(cls.all, begin, end),
                                entry.index)) {
          recoverable = true;
          break;
        }
      }
    }
    const std::string seg = Render(cls.all[slot.segment_index]);
    if (recoverable) {
      report.findings.push_back(
          {Severity::kWarning, "permitted-st-omission", -1,
           slot.segment_index, slot.segment_index,
           "ST for '" + seg + "' omitted; the morpheme is attested "
                              "elsewhere with its ST character"});
    } else {
      report.findings.push_back(
          {Severity::kError, "missing-st", -1, slot.segment_index,
           slot.segment_index,
           "segment '" + seg + "' requires ST but no character covers it"});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Corpus-wide morpheme consistency.

struct ConsistencyFinding {
  Severity severity = Severity::kInfo;
  std::string code;  // inconsistent-morpheme | st-presence-varies
  std::string morpheme;
  std::vector<std::string> entries;
  std::string message;
};

inline std::vector<ConsistencyFinding> ConsistencyCheck(
    const Engine& engine, const std::vector<CorpusEntry>& corpus) {
  struct Occurrence {
    std::string entry_index;
    std::string mt_chars;
    bool st_realized;
    bool has_st;
  };
  std::map<std::string, std::vector<Occurrence>> groups;
  for (const auto& entry : corpus) {
    if (entry.unverified || entry.morphemes.empty()) continue;
    EntryClassification cls;
    EntryAlignment alignment;
    try {
      cls = ClassifyEntry(engine, entry);
      alignment = ResolveAlignment(engine, entry, cls);
    } catch (const Error&) {
      continue;
    }
    for (const auto& m : entry.morphemes) {
      Occurrence occ;
      occ.entry_index = entry.index;
      occ.has_st = false;
      occ.st_realized = true;
      for (int seg = m.begin; seg <= m.end; ++seg) {
        if (cls.slots[seg].role == StructuralRole::kStCandidate &&
            cls.slots[seg].verdict == Verdict::kSt) {
          occ.has_st = true;
          bool covered = false;
          for (const auto& ca : alignment.chars) {
            const AlignmentUnit& u = cls.units[ca.unit];
            if (u.is_st && u.st_segment == seg) covered = true;
          }
          occ.st_realized = occ.st_realized && covered;
        }
      }
      for (const auto& ca : alignment.chars) {
        const AlignmentUnit& u = cls.units[ca.unit];
        if (u.is_st) continue;
        if (u.begin >= m.begin && u.end <= m.end)
          occ.mt_chars += entry.characters[ca.char_ordinal].ch;
      }
      groups[detail::SpanKey(cls.all, m.begin, m.end)].push_back(occ);
    }
  }
  std::vector<ConsistencyFinding> findings;
  for (const auto& [morpheme, occs] : groups) {
    if (occs.size() < 2) continue;
    std::set<std::string> mt_variants;
    bool any_realized = false, any_omitted = false;
    for (const auto& o : occs) {
      mt_variants.insert(o.mt_chars);
      if (o.has_st) {
        (o.st_realized ? any_realized : any_omitted) = true;
      }
    }
    auto entry_list = [&] {
      std::vector<std::string> v;
      for (const auto& o : occs) v.push_back(o.entry_index);
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    };
    if (mt_variants.size() > 1) {
      findings.push_back({Severity::kWarning, "inconsistent-morpheme",
                          morpheme, entry_list(),
                          "main transcription diverges across entries"});
    }
    if (any_realized && any_omitted) {
      findings.push_back({Severity::kInfo, "st-presence-varies", morpheme,
                          entry_list(),
                          "ST presence varies; main characters stable"});
    }
  }
  return findings;
}

}  // namespace hhy

#endif  // HHY_ENGINE_HPP_
