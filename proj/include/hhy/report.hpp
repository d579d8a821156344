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
// Report rendering: aligned text tables shaped like the source study's
// tables for desk checking, and machine-readable JSON. All output is
// deterministic and diff-stable.

#ifndef HHY_REPORT_HPP_
#define HHY_REPORT_HPP_

#include <json.hpp>

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hhy/analyze.hpp"
#include "hhy/dataset.hpp"
#include "hhy/engine.hpp"

namespace hhy {

using Json = nlohmann::ordered_json;

inline const std::vector<Section>& AllSections() {
  static const std::vector<Section> all = {
      Section::kKO, Section::kJA, Section::kMN, Section::kTB, Section::kUY,
      Section::kFA, Section::kMS, Section::kCM, Section::kVN};
  return all;
}

namespace detail {

inline std::string JoinRow(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += '\t';
    line += cells[i];
  }
  return line;
}

}  // namespace detail

// --------------------------------------------------------------------------
// ST identification report, one row per character with per-section counts.

inline std::string RenderStReports(const Engine& engine,
                                   const std::vector<StCharacterReport>& reports) {
  std::set<Section> used;
  for (const auto& r : reports) {
    for (const auto& [sec, n] : r.counts) used.insert(sec);
    for (Section sec : r.unverified_sections) used.insert(sec);
  }
  std::vector<Section> columns;
  for (Section s : AllSections())
    if (used.count(s)) columns.push_back(s);

  std::ostringstream out;
  std::vector<std::string> header = {"char", "category"};
  for (Section s : columns) header.push_back(ToString(s));
  header.insert(header.end(), {"total", "lexemes", "criterion", "decision"});
  out << detail::JoinRow(header) << '\n';
  for (const auto& r : reports) {
    std::vector<std::string> row = {r.ch};
    std::string label = r.category;
    if (const PseudoCategory* p = engine.chars.FindPseudo(r.category)) {
      label = p->name + " " + p->exemplar;
    } else if (const ShengmuCategory* c = engine.baseline.FindShengmu(r.category)) {
      label = c->Label();
    }
    row.push_back(label);
    for (Section s : columns) {
      std::string cell;
      auto it = r.counts.find(s);
      if (it != r.counts.end()) cell = std::to_string(it->second);
      if (r.unverified_sections.count(s)) cell += cell.empty() ? "⊙" : "+⊙";
      if (cell.empty()) cell = "-";
      row.push_back(cell);
    }
    row.push_back(std::to_string(r.total) +
                  (r.unverified_sections.empty() ? "" : "+⊙"));
    row.push_back(std::to_string(r.lexemes));
    row.push_back(r.criterion);
    row.push_back(r.decision);
    out << detail::JoinRow(row) << '\n';
  }
  return out.str();
}

inline Json StReportsJson(const std::vector<StCharacterReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) {
    Json j;
    j["character"] = r.ch;
    j["category"] = r.category;
    Json counts = Json::object();
    for (const auto& [sec, n] : r.counts) counts[ToString(sec)] = n;
    for (Section s : r.unverified_sections)
      counts[ToString(s)] = "unknown";
    j["counts"] = counts;
    j["total"] = r.total;
    j["lexemes"] = r.lexemes;
    j["criterion"] = r.criterion;
    j["decision"] = r.decision;
    arr.push_back(j);
  }
  return arr;
}

// --------------------------------------------------------------------------
// Frequency table: rows are sections, columns the k most frequent values.

inline std::string RenderFrequencyTable(const FrequencyTable& table,
                                        int top_k) {
  auto cells = TopK(table, top_k);
  // Column order: global count, descending, then value.
  std::map<std::string, int> weight;
  for (const auto& c : cells) weight[c.value] += c.count;
  std::vector<std::string> columns;
  for (const auto& [v, n] : weight) columns.push_back(v);
  std::stable_sort(columns.begin(), columns.end(),
                   [&](const std::string& a, const std::string& b) {
                     if (weight[a] != weight[b]) return weight[a] > weight[b];
                     return a < b;
                   });
  std::ostringstream out;
  std::vector<std::string> header = {"section"};
  header.insert(header.end(), columns.begin(), columns.end());
  header.push_back("total");
  out << detail::JoinRow(header) << '\n';
  for (Section sec : AllSections()) {
    auto it = table.sections.find(sec);
    if (it == table.sections.end()) continue;
    std::vector<std::string> row = {ToString(sec)};
    for (const auto& value : columns) {
      bool shown = false;
      for (const auto& c : cells)
        if (c.section == sec && c.value == value) {
          row.push_back(std::to_string(c.count));
          shown = true;
          break;
        }
      if (!shown) row.push_back("-");
    }
    row.push_back(std::to_string(it->second.MtTotal()));
    out << detail::JoinRow(row) << '\n';
  }
  return out.str();
}

inline Json FrequencyTableJson(const FrequencyTable& table) {
  Json j;
  j["axis"] = table.axis.name;
  j["labels"] = table.axis.rime_labels;
  Json sections = Json::object();
  for (const auto& [sec, col] : table.sections) {
    Json s;
    Json values = Json::object();
    for (const auto& [v, n] : col.values) values[v] = n;
    s["values"] = values;
    s["st"] = col.st;
    s["unresolved"] = col.unresolved;
    s["total"] = col.Total();
    sections[ToString(sec)] = s;
  }
  j["sections"] = sections;
  return j;
}

// --------------------------------------------------------------------------
// Validation reports.

inline std::string RenderValidationReport(const ValidationReport& report) {
  std::ostringstream out;
  out << report.index << '\t' << ToString(report.section) << '\t'
      << (report.Conformant() ? "conformant" : "errors") << '\t'
      << "reliability " << report.rel_onset << report.rel_nucleus
      << report.rel_coda << '\n';
  for (const auto& f : report.findings) {
    out << '\t' << ToString(f.severity) << '\t' << f.code << '\t';
    if (f.char_ordinal >= 0) out << "char " << f.char_ordinal << ' ';
    if (f.begin >= 0) out << "seg " << f.begin << '-' << f.end << ' ';
    out << f.message << '\n';
  }
  return out.str();
}

inline Json ValidationReportJson(const ValidationReport& report) {
  Json j;
  j["index"] = report.index;
  j["section"] = ToString(report.section);
  j["conformant"] = report.Conformant();
  j["reliability"] = {{"onset", report.rel_onset},
                      {"nucleus", report.rel_nucleus},
                      {"coda", report.rel_coda}};
  Json arr = Json::array();
  for (const auto& f : report.findings) {
    Json fj;
    fj["severity"] = ToString(f.severity);
    fj["code"] = f.code;
    if (f.char_ordinal >= 0) fj["char"] = f.char_ordinal;
    if (f.begin >= 0) {
      fj["begin"] = f.begin;
      fj["end"] = f.end;
    }
    fj["message"] = f.message;
    arr.push_back(fj);
  }
  j["findings"] = arr;
  return j;
}

// --------------------------------------------------------------------------
// Classification and prediction.

inline Json ClassificationJson(const Word& word,
                               const std::vector<SlotClassification>& slots) {
  Json arr = Json::array();
  for (const auto& s : slots) {
    Json j;
    j["index"] = s.segment_index;
    j["segment"] = Render(word[s.segment_index]);
    j["role"] = ToString(s.role);
    if (s.role == StructuralRole::kStCandidate) {
      j["condition"] = ToString(s.condition);
      j["verdict"] = ToString(s.verdict);
    } else {
      j["verdict"] = "MT";
    }
    if (s.ambiguous_medial) j["ambiguous_medial"] = true;
    arr.push_back(j);
  }
  return arr;
}

inline Json PredictionJson(const Engine& engine,
                           const std::vector<Word>& words,
                           const Prediction& prediction) {
  Json arr = Json::array();
  for (const auto& wp : prediction.words) {
    Json wj;
    wj["word"] = Render(words[wp.word_index]);
    Json syllables = Json::array();
    for (const auto& syl : wp.syllables) {
      Json sj;
      if (syl.onset.segment)
        sj["onset"] = Render(words[wp.word_index][*syl.onset.segment]);
      Json cands = Json::array();
      for (const auto& c : syl.onset.candidates) {
        const ShengmuCategory* cat = engine.baseline.FindShengmu(c.category);
        Json cj;
        cj["category"] = cat ? cat->Label() : c.category;
        cj["rank"] = c.rank;
        cj["confidence"] = ToString(c.confidence);
        cands.push_back(cj);
      }
      sj["onset_candidates"] = cands;
      sj["nucleus"] = Render(words[wp.word_index][syl.rime.nucleus]);
      if (syl.rime.coda)
        sj["coda"] = Render(words[wp.word_index][*syl.rime.coda]);
      sj["rime_candidates"] = syl.rime.labels;
      syllables.push_back(sj);
    }
    wj["syllables"] = syllables;
    Json st = Json::array();
    for (const auto& slot : wp.st_slots) {
      Json sj;
      sj["segment"] = Render(words[wp.word_index][slot.segment]);
      sj["condition"] = ToString(slot.condition);
      sj["verdict"] = ToString(slot.verdict);
      Json cands = Json::array();
      for (const auto& c : slot.candidates) {
        Json cj;
        cj["character"] = c.ch;
        cj["category"] = c.category;
        cj["rank"] = c.rank;
        cands.push_back(cj);
      }
      sj["candidates"] = cands;
      st.push_back(sj);
    }
    wj["st_slots"] = st;
    arr.push_back(wj);
  }
  return arr;
}

}  // namespace hhy

#endif  // HHY_REPORT_HPP_
