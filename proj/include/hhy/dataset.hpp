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
// Loads every seed table into one immutable engine object. The data
// directory is resolved from the explicit argument, the HHY_DATA_DIR
// environment variable, or the compiled-in default, in that order.

#ifndef HHY_DATASET_HPP_
#define HHY_DATASET_HPP_

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhy/classify.hpp"
#include "hhy/correspond.hpp"
#include "hhy/errors.hpp"
#include "hhy/phonology.hpp"
#include "hhy/romanize.hpp"
#include "hhy/tsv.hpp"

namespace hhy {

struct AlignCosts {
  int candidate_match = 0;
  int near_match = 1;
  int mismatch = 3;
  int multi_syllable = 2;
  int omitted_st = 1;
};

inline AlignCosts LoadAlignCosts(const std::string& path) {
  AlignCosts c;
  for (const auto& row : ReadTsv(path, 2)) {
    const int v = std::stoi(row.fields[1]);
    if (row.fields[0] == "candidate-match") c.candidate_match = v;
    else if (row.fields[0] == "near-match") c.near_match = v;
    else if (row.fields[0] == "mismatch") c.mismatch = v;
    else if (row.fields[0] == "multi-syllable") c.multi_syllable = v;
    else if (row.fields[0] == "omitted-st") c.omitted_st = v;
    else throw LoadError(path, row.line, "unknown cost '" + row.fields[0] + "'");
  }
  return c;
}

// Tunables of the ST-character identification procedure; the source gives
// no numbers for "a limited number of examples", so they ship as data.
struct StIdThresholds {
  int limited_total_max = 4;
  int established_min_lexemes = 3;
};

inline StIdThresholds LoadStIdThresholds(const std::string& path) {
  StIdThresholds t;
  for (const auto& row : ReadTsv(path, 2)) {
    const int v = std::stoi(row.fields[1]);
    if (row.fields[0] == "limited-total-max") t.limited_total_max = v;
    else if (row.fields[0] == "established-min-lexemes")
      t.established_min_lexemes = v;
    else
      throw LoadError(path, row.line,
                      "unknown threshold '" + row.fields[0] + "'");
  }
  return t;
}

struct EngineOptions {
  bool apply_in_progress = false;
  bool legacy_m_coda = false;
};

inline std::string ResolveDataDir(const std::string& explicit_dir = "") {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("HHY_DATA_DIR"); env && *env)
    return env;
  return HHY_DEFAULT_DATA_DIR;
}

struct Engine {
  std::string data_dir;
  EngineOptions options;
  Inventory baseline;
  Inventory late_ming;
  std::vector<DiachronicRule> diachronic;
  CharacterTable chars;
  RuleSet correspondences;
  std::map<std::string, RomanizationConvention> conventions;
  AlignCosts costs;
  StIdThresholds st_thresholds;

  static Engine Load(const std::string& dir = "", EngineOptions opt = {}) {
    Engine e;
    e.data_dir = ResolveDataDir(dir);
    e.options = opt;
    const std::string& d = e.data_dir;
    e.baseline = LoadInventory(d + "/shengmu.tsv", d + "/yunmu.tsv");
    e.diachronic = LoadDiachronicRules(d + "/diachronic.tsv");
    ApplyOptions ao;
    ao.apply_in_progress = opt.apply_in_progress;
    e.late_ming = ApplyChanges(e.baseline, e.diachronic, ao);
    e.chars.pseudo = LoadPseudoCategories(d + "/pseudo_categories.tsv");
    LoadCharacters(d + "/characters.tsv", e.baseline, &e.chars,
                   Provenance::kCited);
    LoadCharacters(d + "/characters_ext.tsv", e.baseline, &e.chars,
                   Provenance::kUser);
    LoadStCandidates(d + "/st_candidates.tsv", &e.chars);
    e.correspondences.mt_shengmu = LoadRules(d + "/rules_mt_shengmu.tsv");
    e.correspondences.st = LoadRules(d + "/rules_st.tsv");
    e.correspondences.regions = LoadVowelRegions(d + "/vowel_regions.tsv");
    e.correspondences.profiles = LoadSectionProfiles(d + "/sections.tsv");
    for (const char* name :
         {"uyghur", "mongolian", "persian", "malay", "cham"})
      e.conventions[name] =
          LoadConvention(d + "/conventions/" + name + ".tsv", name);
    e.conventions["ipa"] = IpaPassthrough();
    e.costs = LoadAlignCosts(d + "/align_costs.tsv");
    e.st_thresholds = LoadStIdThresholds(d + "/st_id.tsv");
    CanonicalizeRuleCategories(&e);
    CheckCategoryReferences(e);
    return e;
  }

  const Inventory& At(Stage stage) const {
    return stage == Stage::kBaseline ? baseline : late_ming;
  }

  const SectionProfile& Profile(Section s) const {
    return correspondences.Profile(s);
  }

  // Baseline value of a character's initial category (the pseudo-category
  // value for the ST devices), used for near-match scoring.
  std::optional<Segment> ShengmuValue(const CharacterEntry& e,
                                      Stage stage) const {
    if (e.pseudo) return chars.FindPseudo(e.shengmu)->value;
    const ShengmuCategory* cat = At(stage).FindShengmu(e.shengmu);
    if (!cat) return std::nullopt;
    return cat->ValueAt(stage);
  }

  const RimeValue* Rime(const CharacterEntry& e,
                        Stage stage = Stage::kLateMing) const {
    if (!e.yunmu) return nullptr;
    const YunmuCategory* cat = At(stage).FindYunmu(e.yunmu->first);
    if (!cat) return nullptr;
    auto it = cat->VariantsAt(stage).find(e.yunmu->second);
    if (it == cat->VariantsAt(stage).end()) return nullptr;
    return &it->second;
  }

  std::string RimeLabel(const CharacterEntry& e) const {
    const RimeValue* rv = Rime(e);
    return rv ? rv->label : std::string();
  }

 private:
  // Rule files may use the later tables' romanizations (zhao, chuan, shen,
  // ying); fold them onto the inventory's canonical names so comparisons
  // against character entries are direct.
  static void CanonicalizeRuleCategories(Engine* e) {
    auto canon = [&](std::vector<CorrespondenceRule>* rules) {
      for (auto& rule : *rules) {
        for (auto& ref : rule.categories) {
          if (e->chars.FindPseudo(ref.category)) continue;
          const ShengmuCategory* cat = e->baseline.FindShengmu(ref.category);
          if (!cat)
            throw ConfigError("rule references unknown category '" +
                              ref.category + "' (pattern: " +
                              rule.pattern.text + ")");
          ref.category = cat->name;
        }
      }
    };
    canon(&e->correspondences.mt_shengmu);
    canon(&e->correspondences.st);
    std::map<std::string, std::vector<std::string>> canonical;
    for (auto& [name, chars] : e->chars.st_candidates) {
      std::string key = name;
      if (!e->chars.FindPseudo(name)) {
        const ShengmuCategory* cat = e->baseline.FindShengmu(name);
        if (!cat)
          throw ConfigError("st_candidates references unknown category '" +
                            name + "'");
        key = cat->name;
      }
      canonical[key] = std::move(chars);
    }
    e->chars.st_candidates = std::move(canonical);
  }

  static void CheckCategoryReferences(const Engine& e) {
    for (const auto& [ch, entry] : e.chars.entries) {
      if (entry.pseudo) {
        if (!e.chars.FindPseudo(entry.shengmu))
          throw ConfigError("character '" + ch +
                            "' references unknown pseudo-category '" +
                            entry.shengmu + "'");
      } else if (!e.baseline.FindShengmu(entry.shengmu)) {
        throw ConfigError("character '" + ch +
                          "' references unknown category '" + entry.shengmu +
                          "'");
      }
      if (entry.yunmu && !e.baseline.FindYunmu(entry.yunmu->first))
        throw ConfigError("character '" + ch + "' references unknown rime '" +
                          entry.yunmu->first + "'");
    }
  }
};

}  // namespace hhy

#endif  // HHY_DATASET_HPP_
