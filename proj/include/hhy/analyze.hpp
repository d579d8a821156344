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
// Corpus analytics: per-section frequency tables over rime labels or
// categories, and the two-criterion ST-character identification procedure
// (attested across sections; attested across lexical items). Analyses are
// pure functions of the loaded corpus; entry order never changes a result.

#ifndef HHY_ANALYZE_HPP_
#define HHY_ANALYZE_HPP_

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "hhy/align.hpp"
#include "hhy/corpus.hpp"
#include "hhy/dataset.hpp"
#include "hhy/engine.hpp"

namespace hhy {

// ---------------------------------------------------------------------------
// Deterministic per-entry fan-out: results land in entry order regardless
// of the worker count.

template <typename R>
std::vector<R> ParallelMap(const std::vector<CorpusEntry>& corpus,
                           int jobs,
                           const std::function<R(const CorpusEntry&)>& fn) {
  std::vector<R> results(corpus.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < corpus.size(); ++i) results[i] = fn(corpus[i]);
    return results;
  }
  std::vector<std::thread> workers;
  std::size_t stride = (corpus.size() + jobs - 1) / jobs;
  for (int w = 0; w < jobs; ++w) {
    const std::size_t begin = w * stride;
    const std::size_t end = std::min(corpus.size(), begin + stride);
    if (begin >= end) break;
    workers.emplace_back([&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) results[i] = fn(corpus[i]);
    });
  }
  for (auto& t : workers) t.join();
  return results;
}

// ---------------------------------------------------------------------------
// Frequency tables.

struct FrequencyAxis {
  std::string name;                     // e.g. "a-e" for the /a/ + /ə/ view
  std::vector<std::string> rime_labels; // characters counted by rime label
};

struct SectionColumn {
  std::map<std::string, int> values;  // covered value -> count (MT role)
  int st = 0;
  int unresolved = 0;
  int Total() const {
    int t = st + unresolved;
    for (const auto& [v, n] : values) t += n;
    return t;
  }
  int MtTotal() const {
    int t = 0;
    for (const auto& [v, n] : values) t += n;
    return t;
  }
};

struct FrequencyTable {
  FrequencyAxis axis;
  std::map<Section, SectionColumn> sections;
};

struct EntryAnalysis {
  bool ok = false;
  bool unverified = false;
  EntryClassification cls;
  EntryAlignment alignment;
};

inline EntryAnalysis AnalyzeEntry(const Engine& engine,
                                  const CorpusEntry& entry) {
  EntryAnalysis a;
  if (entry.unverified) {
    a.unverified = true;
    return a;
  }
  try {
    a.cls = ClassifyEntry(engine, entry);
    a.alignment = ResolveAlignment(engine, entry, a.cls);
    a.ok = true;
  } catch (const Error&) {
    a.ok = false;
  }
  return a;
}

// Counts, per section, the target values covered by characters whose rime
// label lies on the axis. ST-role uses and unresolvable characters are
// bucketed separately and excluded from the value cells, so
// sum(values) == total - st - unresolved by construction and by check.
inline FrequencyTable FrequencyTables(const Engine& engine,
                                      const std::vector<CorpusEntry>& corpus,
                                      const FrequencyAxis& axis,
                                      int jobs = 1) {
  FrequencyTable table;
  table.axis = axis;
  auto on_axis = [&](const CharacterEntry& ce) {
    const std::string label = engine.RimeLabel(ce);
    if (label.empty()) return false;
    return std::find(axis.rime_labels.begin(), axis.rime_labels.end(),
                     label) != axis.rime_labels.end();
  };
  std::vector<EntryAnalysis> analyses = ParallelMap<EntryAnalysis>(
      corpus, jobs,
      [&](const CorpusEntry& e) { return AnalyzeEntry(engine, e); });
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusEntry& entry = corpus[i];
    const EntryAnalysis& a = analyses[i];
    SectionColumn& col = table.sections[entry.section];
    if (!a.ok) {
      for (const auto& c : entry.characters) {
        try {
          if (on_axis(engine.chars.Lookup(c.ch))) ++col.unresolved;
        } catch (const LookupError&) {
          ++col.unresolved;
        }
      }
      continue;
    }
    std::set<int> aligned;
    for (const auto& ca : a.alignment.chars) {
      aligned.insert(ca.char_ordinal);
      const CharacterEntry& ce =
          engine.chars.Lookup(entry.characters[ca.char_ordinal].ch);
      if (!on_axis(ce)) continue;
      const AlignmentUnit& unit = a.cls.units[ca.unit];
      if (unit.is_st) {
        ++col.st;
        continue;
      }
      std::string value = Render(a.cls.all[unit.nucleus]);
      if (ca.units_covered == 2) {
        const AlignmentUnit& next = a.cls.units[ca.unit + 1];
        auto glide = detail::OffGlideClass(a.cls.all[next.nucleus]);
        value += glide ? *glide : Render(a.cls.all[next.nucleus]);
      }
      ++col.values[value];
    }
    for (std::size_t ci = 0; ci < entry.characters.size(); ++ci) {
      if (aligned.count(static_cast<int>(ci))) continue;
      try {
        if (on_axis(engine.chars.Lookup(entry.characters[ci].ch)))
          ++col.unresolved;
      } catch (const LookupError&) {
        ++col.unresolved;
      }
    }
  }
  return table;
}

// The printed presentation keeps each section's k most frequent values.
struct TopKCell {
  Section section;
  std::string value;
  int count;
};

inline std::vector<TopKCell> TopK(const FrequencyTable& table, int k) {
  std::vector<TopKCell> out;
  for (const auto& [section, col] : table.sections) {
    std::vector<std::pair<std::string, int>> cells(col.values.begin(),
                                                   col.values.end());
    std::stable_sort(cells.begin(), cells.end(),
                     [](const auto& a, const auto& b) {
                       if (a.second != b.second) return a.second > b.second;
                       return a.first < b.first;
                     });
    for (int i = 0; i < k && i < static_cast<int>(cells.size()); ++i)
      out.push_back({section, cells[i].first, cells[i].second});
  }
  return out;
}

// ---------------------------------------------------------------------------
// ST-character identification.

struct StCharacterReport {
  std::string ch;
  std::string category;
  std::map<Section, int> counts;          // verified ST occurrences
  std::set<Section> unverified_sections;  // attested, count unknowable
  int total = 0;
  int lexemes = 0;
  std::string decision;   // established | retained-limited | rejected |
                          // undetermined
  std::string criterion;  // multi-section | multi-lexeme | none
};

// Decides every character attested in an ST slot. Verified occurrences
// count sections and distinct lexemes (the full reconstructed word string);
// unverifiable entries mark attestation only and are excluded from the
// decision, which is a pure function of the occurrence multiset.
inline std::vector<StCharacterReport> IdentifyStChars(
    const Engine& engine, const std::vector<CorpusEntry>& corpus,
    int jobs = 1) {
  struct Evidence {
    std::map<Section, int> counts;
    std::set<Section> unverified;
    std::set<std::string> lexemes;
  };
  std::map<std::string, Evidence> evidence;

  std::vector<EntryAnalysis> analyses = ParallelMap<EntryAnalysis>(
      corpus, jobs,
      [&](const CorpusEntry& e) { return AnalyzeEntry(engine, e); });
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusEntry& entry = corpus[i];
    const EntryAnalysis& a = analyses[i];
    if (entry.unverified) {
      // The entry attests its characters for ST without a countable form.
      for (const auto& c : entry.characters)
        evidence[c.ch].unverified.insert(entry.section);
      continue;
    }
    if (!a.ok) continue;
    for (const auto& ca : a.alignment.chars) {
      const AlignmentUnit& unit = a.cls.units[ca.unit];
      if (!unit.is_st) continue;
      const std::string& ch = entry.characters[ca.char_ordinal].ch;
      Evidence& ev = evidence[ch];
      ++ev.counts[entry.section];
      // Lexeme identity is the reconstructed word containing the slot.
      const int word = a.cls.word_of[unit.st_segment];
      ev.lexemes.insert(Render(entry.words[word]));
    }
  }

  std::map<std::string, std::set<std::string>> category_chars;
  for (const auto& [ch, ev] : evidence) {
    const CharacterEntry& ce = engine.chars.Lookup(ch);
    category_chars[ce.shengmu].insert(ch);
  }

  std::vector<StCharacterReport> reports;
  for (const auto& [ch, ev] : evidence) {
    StCharacterReport r;
    r.ch = ch;
    r.category = engine.chars.Lookup(ch).shengmu;
    r.counts = ev.counts;
    r.unverified_sections = ev.unverified;
    for (const auto& [sec, n] : ev.counts) r.total += n;
    r.lexemes = static_cast<int>(ev.lexemes.size());
    const int sections = static_cast<int>(ev.counts.size());
    const StIdThresholds& t = engine.st_thresholds;
    if (r.total == 0) {
      // Attested only in unverifiable entries.
      r.criterion = "none";
      r.decision = "rejected";
    } else if (sections >= 2) {
      r.criterion = "multi-section";
      if (r.total <= t.limited_total_max ||
          r.lexemes < t.established_min_lexemes)
        r.decision = "retained-limited";
      else
        r.decision = "established";
    } else if (r.lexemes >= 2) {
      r.criterion = "multi-lexeme";
      r.decision = r.lexemes >= t.established_min_lexemes
                       ? "established"
                       : "retained-limited";
    } else {
      r.criterion = "none";
      const bool lone_in_category =
          category_chars[r.category].size() == 1;
      r.decision = (r.total == 1 && lone_in_category) ? "undetermined"
                                                      : "rejected";
    }
    reports.push_back(std::move(r));
  }

  // Stable report order: category (inventory order, pseudo-categories
  // last), then ST rank, then character.
  auto category_order = [&](const std::string& name) {
    int i = 0;
    for (const auto& c : engine.baseline.shengmu) {
      if (c.name == name) return i;
      ++i;
    }
    for (const auto& p : engine.chars.pseudo) {
      if (p.name == name) return i;
      ++i;
    }
    return i;
  };
  std::stable_sort(reports.begin(), reports.end(),
                   [&](const StCharacterReport& a, const StCharacterReport& b) {
                     const int ca = category_order(a.category);
                     const int cb = category_order(b.category);
                     if (ca != cb) return ca < cb;
                     if (a.total != b.total) return a.total > b.total;
                     return a.ch < b.ch;
                   });
  return reports;
}

}  // namespace hhy

#endif  // HHY_ANALYZE_HPP_
