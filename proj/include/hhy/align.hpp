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
// Character-to-segment alignment. A main-transcription character covers one
// syllable of the parse (rarely two, at a declared extra cost); an ST
// character covers exactly one ST-candidate segment; an omitted ST slot is
// a gap. Dynamic programming over (character, unit) with declared costs;
// all minimal alignments are tied off deterministically, preferring
// coverage over omission from the left.

#ifndef HHY_ALIGN_HPP_
#define HHY_ALIGN_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hhy/classify.hpp"
#include "hhy/corpus.hpp"
#include "hhy/correspond.hpp"
#include "hhy/dataset.hpp"
#include "hhy/errors.hpp"

namespace hhy {

struct AlignmentUnit {
  bool is_st = false;
  int word_index = 0;
  int begin = 0, end = 0;  // global segment range, end inclusive
  // Syllable slots, global indices.
  std::optional<int> onset, medial, coda;
  int nucleus = -1;
  std::string coda_class;  // "", "n", "ŋ", "m"
  // ST slot.
  int st_segment = -1;
};

struct EntryClassification {
  Word all;                               // segments of all words, in order
  std::vector<int> word_of;               // word index per segment
  std::vector<SlotClassification> slots;  // global, conditions resolved
  std::vector<AlignmentUnit> units;
  std::vector<std::string> warnings;
};

inline EntryClassification ClassifyEntry(const Engine& engine,
                                         const CorpusEntry& entry) {
  const SectionProfile& profile = engine.Profile(entry.section);
  ParseOptions popt;
  popt.legacy_m_coda = engine.options.legacy_m_coda;
  EntryClassification out;
  int offset = 0;
  for (std::size_t wi = 0; wi < entry.words.size(); ++wi) {
    const Word& word = entry.words[wi];
    ClassifiedWord cls = ClassifyWord(word, profile.release, popt);
    for (const auto& warning : cls.warnings)
      out.warnings.push_back(entry.index + ": " + warning);
    for (std::size_t k = 0; k < word.size(); ++k) {
      out.all.push_back(word[k]);
      out.word_of.push_back(static_cast<int>(wi));
      SlotClassification slot = cls.slots[k];
      slot.segment_index += offset;
      out.slots.push_back(slot);
    }
    // Interleave syllable and ST units in segment order.
    std::size_t syl = 0, st = 0;
    const auto& parse = cls.parse;
    auto syl_begin = [&](const Syllable& s) {
      int b = s.nucleus;
      if (s.medial) b = std::min(b, *s.medial);
      if (s.onset) b = std::min(b, *s.onset);
      return b;
    };
    while (syl < parse.syllables.size() || st < parse.st_slots.size()) {
      bool take_syl = syl < parse.syllables.size() &&
                      (st >= parse.st_slots.size() ||
                       syl_begin(parse.syllables[syl]) < parse.st_slots[st]);
      AlignmentUnit unit;
      unit.word_index = static_cast<int>(wi);
      if (take_syl) {
        const Syllable& s = parse.syllables[syl++];
        unit.is_st = false;
        unit.begin = offset + syl_begin(s);
        unit.end = offset + (s.coda ? *s.coda : s.nucleus);
        if (s.onset) unit.onset = offset + *s.onset;
        if (s.medial) unit.medial = offset + *s.medial;
        unit.nucleus = offset + s.nucleus;
        if (s.coda) {
          unit.coda = offset + *s.coda;
          unit.coda_class = word[*s.coda].symbol;
        }
      } else {
        const int seg = parse.st_slots[st++];
        unit.is_st = true;
        unit.begin = unit.end = unit.st_segment = offset + seg;
      }
      out.units.push_back(unit);
    }
    offset += static_cast<int>(word.size());
  }
  return out;
}

namespace detail {

constexpr int kAlignInf = 1 << 28;

// Quality of one character against one unit: 0 full candidate-set match,
// 1 feature-compatible near-match, 2 forced mismatch, 3 impossible.
inline int StUnitQuality(const Engine& engine, const CharacterEntry& ce,
                         const Segment& seg, Section section) {
  for (const auto& cand : StCharacterCandidates(
           engine.correspondences, engine.chars, seg, section))
    if (cand.ch == ce.ch) return 0;
  auto value = engine.ShengmuValue(ce, Stage::kLateMing);
  if (value && FeaturesMatch(*value, seg)) return 1;
  return 2;
}

inline int SyllableQuality(const Engine& engine, const CharacterEntry& ce,
                           const EntryClassification& cls,
                           const AlignmentUnit& unit, Section section,
                           const std::string& coda_class_override = "\x01") {
  const RimeValue* rime = engine.Rime(ce);
  if (!rime || ce.pseudo) return 3;
  int onset_q;
  if (unit.onset) {
    const Segment& onset = cls.all[*unit.onset];
    onset_q = 2;
    for (const auto& cand :
         MtShengmuCandidates(engine.correspondences, onset, section))
      if (cand.category == ce.shengmu) {
        onset_q = 0;
        break;
      }
    if (onset_q != 0) {
      auto value = engine.ShengmuValue(ce, Stage::kLateMing);
      if (value && FeaturesMatch(*value, onset)) onset_q = 1;
    }
  } else {
    onset_q = ce.shengmu == "yun" ? 0 : 2;
  }
  const Segment& nucleus = cls.all[unit.nucleus];
  std::optional<Segment> medial;
  if (unit.medial) medial = cls.all[*unit.medial];
  const std::string coda_class =
      coda_class_override == "\x01" ? unit.coda_class : coda_class_override;
  int rime_q = 2;
  const bool coda_ok = rime->CodaClass() == coda_class;
  if (coda_ok) {
    bool label_ok = false;
    for (const auto& label : MtYunmuCandidates(engine.correspondences, nucleus,
                                               medial, section))
      label_ok = label_ok || label == rime->label;
    if (label_ok) rime_q = 0;
    else if (FeaturesMatch(rime->nucleus, nucleus)) rime_q = 1;
  }
  if (onset_q == 0 && rime_q == 0) return 0;
  if (onset_q <= 1 && rime_q <= 1) return 1;
  return 2;
}

inline int QualityCost(const Engine& engine, int quality) {
  switch (quality) {
    case 0: return engine.costs.candidate_match;
    case 1: return engine.costs.near_match;
    case 2: return engine.costs.mismatch;
    default: return kAlignInf;
  }
}

// A following bare-nucleus syllable absorbed as an off-glide: its high
// vowel behaves as the rime's coda class.
inline std::optional<std::string> OffGlideClass(const Segment& v) {
  if (!v.IsVowel()) return std::nullopt;
  if (v.height == Height::kClose || v.height == Height::kCloseMid)
    return v.backness == Backness::kFront ? std::string("j")
                                          : std::string("w");
  return std::nullopt;
}

}  // namespace detail

struct CharAlignment {
  int char_ordinal = 0;
  int unit = -1;        // first unit covered
  int units_covered = 1;
  int begin = 0, end = 0;  // global segment range, inclusive
  int quality = 0;         // 0 match, 1 near, 2 mismatch
};

namespace detail {

inline int UnitQuality(const Engine& engine, const CharacterEntry& ce,
                       const EntryClassification& cls,
                       const AlignmentUnit& unit, Section section) {
  if (unit.is_st)
    return StUnitQuality(engine, ce, cls.all[unit.st_segment], section);
  return SyllableQuality(engine, ce, cls, unit, section);
}

}  // namespace detail

struct EntryAlignment {
  std::vector<CharAlignment> chars;
  std::vector<int> omitted_units;  // uncovered ST units
  int total_cost = 0;

  std::vector<CharSpan> Spans() const {
    std::vector<CharSpan> out;
    for (const auto& c : chars)
      out.push_back({c.char_ordinal, c.begin, c.end});
    return out;
  }
};

// Maps spans supplied in the corpus file onto parse units. Each span must
// tile exactly one unit (or two adjacent syllables of one word); anything
// else cannot be an attested alignment of this parse.
inline EntryAlignment FromSuppliedSpans(const Engine& engine,
                                        const CorpusEntry& entry,
                                        const EntryClassification& cls) {
  EntryAlignment out;
  std::vector<bool> covered(cls.units.size(), false);
  for (const auto& span : *entry.alignment) {
    const CharacterEntry& ce =
        engine.chars.Lookup(entry.characters[span.char_ordinal].ch);
    int first = -1;
    for (int j = 0; j < static_cast<int>(cls.units.size()); ++j)
      if (cls.units[j].begin == span.begin) first = j;
    CharAlignment ca;
    ca.char_ordinal = span.char_ordinal;
    ca.begin = span.begin;
    ca.end = span.end;
    if (first >= 0 && cls.units[first].end == span.end) {
      ca.unit = first;
      ca.units_covered = 1;
      ca.quality =
          detail::UnitQuality(engine, ce, cls, cls.units[first], entry.section);
      covered[first] = true;
    } else if (first >= 0 && first + 1 < static_cast<int>(cls.units.size()) &&
               !cls.units[first].is_st && !cls.units[first + 1].is_st &&
               cls.units[first + 1].word_index ==
                   cls.units[first].word_index &&
               cls.units[first + 1].end == span.end) {
      ca.unit = first;
      ca.units_covered = 2;
      ca.quality = 1;
      covered[first] = covered[first + 1] = true;
    } else {
      throw AlignmentError("entry " + entry.index +
                           ": supplied span for '" + ce.ch +
                           "' does not fit the parse");
    }
    out.chars.push_back(ca);
  }
  for (int j = 0; j < static_cast<int>(cls.units.size()); ++j) {
    if (covered[j]) continue;
    if (!cls.units[j].is_st)
      throw AlignmentError("entry " + entry.index +
                           ": supplied alignment leaves a syllable uncovered");
    out.omitted_units.push_back(j);
  }
  std::sort(out.chars.begin(), out.chars.end(),
            [](const CharAlignment& a, const CharAlignment& b) {
              return a.char_ordinal < b.char_ordinal;
            });
  return out;
}

// Minimum-cost assignment of characters to units. Throws AlignmentError
// when no finite-cost alignment exists, naming the first uncoverable
// character.
inline EntryAlignment AlignEntry(const Engine& engine, const CorpusEntry& entry,
                                 const EntryClassification& cls) {
  using detail::kAlignInf;
  const int m = static_cast<int>(entry.characters.size());
  const int n = static_cast<int>(cls.units.size());
  std::vector<const CharacterEntry*> centries(m);
  for (int i = 0; i < m; ++i)
    centries[i] = &engine.chars.Lookup(entry.characters[i].ch);

  // cover_cost[i][j], multi_cost[i][j] precomputed.
  std::vector<std::vector<int>> cover(m, std::vector<int>(n, kAlignInf));
  std::vector<std::vector<int>> cover_quality(m, std::vector<int>(n, 3));
  std::vector<std::vector<int>> multi(m, std::vector<int>(n, kAlignInf));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const AlignmentUnit& u = cls.units[j];
      int q;
      if (u.is_st) {
        q = detail::StUnitQuality(engine, *centries[i],
                                  cls.all[u.st_segment], entry.section);
      } else {
        q = detail::SyllableQuality(engine, *centries[i], cls, u,
                                    entry.section);
      }
      cover_quality[i][j] = q;
      cover[i][j] = detail::QualityCost(engine, q);
      if (j + 1 < n && !u.is_st && !cls.units[j + 1].is_st &&
          cls.units[j + 1].word_index == u.word_index) {
        const AlignmentUnit& next = cls.units[j + 1];
        if (!next.onset && !next.medial && !next.coda) {
          auto glide = detail::OffGlideClass(cls.all[next.nucleus]);
          int mq = detail::SyllableQuality(engine, *centries[i], cls, u,
                                           entry.section,
                                           glide ? *glide : std::string());
          if (mq < 3)
            multi[i][j] =
                detail::QualityCost(engine, mq) + engine.costs.multi_syllable;
        }
      }
    }
  }

  // dp[i][j]: best cost for chars[i..m) against units[j..n).
  std::vector<std::vector<int>> dp(m + 1, std::vector<int>(n + 1, kAlignInf));
  std::vector<std::vector<int>> choice(m + 1, std::vector<int>(n + 1, -1));
  dp[m][n] = 0;
  for (int j = n - 1; j >= 0; --j)
    dp[m][j] = cls.units[j].is_st && dp[m][j + 1] < kAlignInf
                   ? dp[m][j + 1] + engine.costs.omitted_st
                   : kAlignInf;
  for (int i = m - 1; i >= 0; --i) {
    for (int j = n - 1; j >= 0; --j) {
      int best = kAlignInf, pick = -1;
      if (dp[i + 1][j + 1] < kAlignInf && cover[i][j] < kAlignInf) {
        best = dp[i + 1][j + 1] + cover[i][j];
        pick = 0;
      }
      if (j + 2 <= n && multi[i][j] < kAlignInf &&
          dp[i + 1][j + 2] < kAlignInf) {
        const int c = dp[i + 1][j + 2] + multi[i][j];
        if (c < best) {
          best = c;
          pick = 1;
        }
      }
      if (cls.units[j].is_st && dp[i][j + 1] < kAlignInf) {
        const int c = dp[i][j + 1] + engine.costs.omitted_st;
        if (c < best) {
          best = c;
          pick = 2;
        }
      }
      dp[i][j] = best;
      choice[i][j] = pick;
    }
  }

  if (dp[0][0] >= kAlignInf) {
    // Forward reachability to name the first character that cannot be
    // placed on any unit.
    std::vector<std::vector<bool>> reach(m + 1,
                                         std::vector<bool>(n + 1, false));
    reach[0][0] = true;
    int covered = 0;
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; j <= n; ++j) {
        if (!reach[i][j]) continue;
        if (i > covered) covered = i;
        if (i < m && j < n && cover[i][j] < kAlignInf)
          reach[i + 1][j + 1] = true;
        if (i < m && j + 2 <= n && multi[i][j] < kAlignInf)
          reach[i + 1][j + 2] = true;
        if (j < n && cls.units[j].is_st) reach[i][j + 1] = true;
      }
    }
    const int bad = std::min(covered, m - 1);
    throw AlignmentError("entry " + entry.index +
                         ": no feasible alignment; character '" +
                         entry.characters[bad].ch + "' cannot be covered");
  }

  EntryAlignment out;
  out.total_cost = dp[0][0];
  int i = 0, j = 0;
  while (i < m || j < n) {
    if (i == m) {
      out.omitted_units.push_back(j);
      ++j;
      continue;
    }
    switch (choice[i][j]) {
      case 0: {
        CharAlignment ca;
        ca.char_ordinal = i;
        ca.unit = j;
        ca.units_covered = 1;
        ca.begin = cls.units[j].begin;
        ca.end = cls.units[j].end;
        ca.quality = cover_quality[i][j];
        out.chars.push_back(ca);
        ++i;
        ++j;
        break;
      }
      case 1: {
        CharAlignment ca;
        ca.char_ordinal = i;
        ca.unit = j;
        ca.units_covered = 2;
        ca.begin = cls.units[j].begin;
        ca.end = cls.units[j + 1].end;
        ca.quality = 1;
        out.chars.push_back(ca);
        ++i;
        j += 2;
        break;
      }
      case 2:
        out.omitted_units.push_back(j);
        ++j;
        break;
      default:
        throw AlignmentError("entry " + entry.index +
                             ": internal alignment reconstruction failure");
    }
  }
  return out;
}

// The alignment analytics and validation work from: the file's own spans
// when the entry carries them, the computed minimum-cost one otherwise.
inline EntryAlignment ResolveAlignment(const Engine& engine,
                                       const CorpusEntry& entry,
                                       const EntryClassification& cls) {
  if (entry.alignment) return FromSuppliedSpans(engine, entry, cls);
  return AlignEntry(engine, entry, cls);
}

}  // namespace hhy

#endif  // HHY_ALIGN_HPP_
