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
// The Late-Ming Chinese phonological model: initial (shengmu) and rime
// (yunmu) category inventories at the 1324 rime-book baseline, the
// diachronic rule applier that produces the Late-Ming stage, and the
// per-character category table. Everything is immutable after load.

#ifndef HHY_PHONOLOGY_HPP_
#define HHY_PHONOLOGY_HPP_

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhy/errors.hpp"
#include "hhy/ipa.hpp"
#include "hhy/tsv.hpp"
#include "hhy/utf8.hpp"

namespace hhy {

enum class Stage { kBaseline, kLateMing };

enum class CategoryStatus { kStable, kLost, kMerged, kInProgress };

inline const char* ToString(CategoryStatus s) {
  switch (s) {
    case CategoryStatus::kStable: return "stable";
    case CategoryStatus::kLost: return "lost";
    case CategoryStatus::kMerged: return "merged";
    case CategoryStatus::kInProgress: return "in-progress";
  }
  return "?";
}

enum class Aperture { kKaikou, kQichi, kHekou, kCuokou };

inline const char* ToString(Aperture a) {
  switch (a) {
    case Aperture::kKaikou: return "kaikou";
    case Aperture::kQichi: return "qichi";
    case Aperture::kHekou: return "hekou";
    case Aperture::kCuokou: return "cuokou";
  }
  return "?";
}

inline Aperture ApertureFromString(const std::string& s, const std::string& file,
                                   int line) {
  if (s == "kaikou") return Aperture::kKaikou;
  if (s == "qichi") return Aperture::kQichi;
  if (s == "hekou") return Aperture::kHekou;
  if (s == "cuokou") return Aperture::kCuokou;
  throw LoadError(file, line, "unknown aperture class '" + s + "'");
}

// An initial-consonant category. An empty value is the zero-initial
// sentinel.
struct ShengmuCategory {
  std::string name;      // romanized label, e.g. "bang"
  std::string exemplar;  // e.g. "幫"
  std::string alias;     // alternate romanization used by later tables
  std::optional<Segment> baseline;
  std::optional<Segment> adjusted;
  bool adjusted_set = false;
  CategoryStatus status = CategoryStatus::kStable;
  std::vector<std::string> fired;  // rule ids that touched this category
  std::string anchor;

  std::string Label() const { return name + " " + exemplar; }
  const std::optional<Segment>& ValueAt(Stage stage) const {
    return (stage == Stage::kLateMing && adjusted_set) ? adjusted : baseline;
  }
};

// One aperture variant of a rime: medial glide(s), nucleus, optional coda,
// plus the phonemic label and the Late-Ming vowel-region label used by the
// correspondence tables.
struct RimeValue {
  Word medials;
  Segment nucleus;
  std::optional<Segment> coda;
  std::string phonemic;  // e.g. "/uŋ/"
  std::string label;     // e.g. "/u/"

  Word Segments() const {
    Word out = medials;
    out.push_back(nucleus);
    if (coda) out.push_back(*coda);
    return out;
  }
  std::string Phonetic() const { return Render(Segments()); }
  // Coda class: "", "n", "ŋ", "m", "j", "w".
  std::string CodaClass() const {
    if (!coda) return "";
    if (coda->IsVowel())
      return coda->backness == Backness::kFront ? "j" : "w";
    if (coda->IsGlide()) return coda->symbol;
    return coda->symbol;
  }
};

struct YunmuCategory {
  std::string name;      // e.g. "dongzhong"
  std::string exemplar;  // e.g. "東鐘"
  std::map<Aperture, RimeValue> variants;
  std::map<Aperture, RimeValue> adjusted;
  bool adjusted_set = false;
  CategoryStatus status = CategoryStatus::kStable;
  std::vector<std::string> fired;
  std::string anchor;

  std::string Label() const { return name + " " + exemplar; }
  const std::map<Aperture, RimeValue>& VariantsAt(Stage stage) const {
    return (stage == Stage::kLateMing && adjusted_set) ? adjusted : variants;
  }
};

struct RuleEffect {
  std::string kind;    // shengmu-set | shengmu-note | coda-rewrite |
                       // nucleus-rewrite | rime-note
  std::string target;  // category name, "rime:aperture", or a coda symbol
  std::string effect;  // e.g. "value=0 status=lost", "n", "ɤ"
};

struct DiachronicRule {
  std::string id;
  bool completed = false;
  std::string anchor;
  std::vector<RuleEffect> effects;
};

struct Inventory {
  std::vector<ShengmuCategory> shengmu;  // seed file order
  std::vector<YunmuCategory> yunmu;
  bool in_progress_applied = false;

  const ShengmuCategory* FindShengmu(const std::string& name) const {
    for (const auto& c : shengmu)
      if (c.name == name || c.alias == name || c.exemplar == name) return &c;
    return nullptr;
  }
  ShengmuCategory* FindShengmu(const std::string& name) {
    return const_cast<ShengmuCategory*>(
        static_cast<const Inventory*>(this)->FindShengmu(name));
  }
  const YunmuCategory* FindYunmu(const std::string& name) const {
    for (const auto& c : yunmu)
      if (c.name == name || c.exemplar == name) return &c;
    return nullptr;
  }
  YunmuCategory* FindYunmu(const std::string& name) {
    return const_cast<YunmuCategory*>(
        static_cast<const Inventory*>(this)->FindYunmu(name));
  }
};

namespace detail {

// Splits a rime's phonetic value into medials / nucleus / coda. Trailing
// nasal or off-glide vowel is the coda; the last remaining vowel is the
// nucleus; any leading high vowels are medial glides. A trailing high
// vowel counts as an off-glide only after a non-high nucleus: [ai] ends in
// a coda glide, [iu] is medial plus nucleus (/ju/).
inline RimeValue SplitRime(const Word& segs, const std::string& file,
                           int line) {
  RimeValue rv;
  if (segs.empty()) throw LoadError(file, line, "empty rime value");
  auto high = [](const Segment& s) {
    return s.symbol == "i" || s.symbol == "u" || s.symbol == "y";
  };
  std::size_t end = segs.size();
  const Segment& last = segs[end - 1];
  bool coda = false;
  if (last.IsNasal()) {
    coda = true;
  } else if (end >= 2 && last.IsVowel() && high(last) &&
             segs[end - 2].IsVowel() && !high(segs[end - 2])) {
    coda = true;  // off-glide
  }
  if (coda) {
    rv.coda = last;
    --end;
  }
  if (end == 0 || !segs[end - 1].IsVowel())
    throw LoadError(file, line, "rime value lacks a nucleus vowel");
  rv.nucleus = segs[end - 1];
  for (std::size_t i = 0; i + 1 < end; ++i) {
    const Segment& s = segs[i];
    if (!s.IsVowel() || (s.symbol != "i" && s.symbol != "u"))
      throw LoadError(file, line, "unexpected pre-nucleus segment '" +
                                      s.symbol + "' in rime value");
    rv.medials.push_back(s);
  }
  return rv;
}

}  // namespace detail

// Loads the two inventory seed files. Shengmu columns: name, exemplar,
// alias (or -), value (0 = zero initial), anchor. Yunmu columns: name,
// exemplar, aperture, phonetic, phonemic, region label, anchor.
inline Inventory LoadInventory(const std::string& shengmu_path,
                               const std::string& yunmu_path) {
  Inventory inv;
  for (const auto& row : ReadTsv(shengmu_path, 5)) {
    ShengmuCategory cat;
    cat.name = row.fields[0];
    cat.exemplar = row.fields[1];
    if (row.fields[2] != "-") cat.alias = row.fields[2];
    if (row.fields[3] != "0") {
      Word w;
      try {
        w = ParseIpa(row.fields[3]);
      } catch (const IpaParseError& e) {
        throw LoadError(shengmu_path, row.line, e.what());
      }
      if (w.size() != 1 || !w[0].IsConsonant())
        throw LoadError(shengmu_path, row.line,
                        "shengmu value must be a single consonant");
      cat.baseline = w[0];
    }
    cat.anchor = row.fields[4];
    if (inv.FindShengmu(cat.name))
      throw LoadError(shengmu_path, row.line,
                      "duplicate shengmu '" + cat.name + "'");
    inv.shengmu.push_back(std::move(cat));
  }
  for (const auto& row : ReadTsv(yunmu_path, 7)) {
    const std::string& name = row.fields[0];
    YunmuCategory* cat = inv.FindYunmu(name);
    if (!cat) {
      YunmuCategory fresh;
      fresh.name = name;
      fresh.exemplar = row.fields[1];
      fresh.anchor = row.fields[6];
      inv.yunmu.push_back(std::move(fresh));
      cat = &inv.yunmu.back();
    }
    Aperture ap = ApertureFromString(row.fields[2], yunmu_path, row.line);
    if (cat->variants.count(ap))
      throw LoadError(yunmu_path, row.line,
                      "duplicate variant " + name + ":" + row.fields[2]);
    Word segs;
    try {
      segs = ParseIpa(row.fields[3]);
    } catch (const IpaParseError& e) {
      throw LoadError(yunmu_path, row.line, e.what());
    }
    RimeValue rv = detail::SplitRime(segs, yunmu_path, row.line);
    rv.phonemic = row.fields[4];
    rv.label = row.fields[5];
    cat->variants[ap] = std::move(rv);
  }
  return inv;
}

inline std::vector<DiachronicRule> LoadDiachronicRules(
    const std::string& path) {
  std::vector<DiachronicRule> rules;
  for (const auto& row : ReadTsv(path, 6)) {
    const std::string& id = row.fields[0];
    DiachronicRule* rule = nullptr;
    for (auto& r : rules)
      if (r.id == id) rule = &r;
    if (!rule) {
      DiachronicRule fresh;
      fresh.id = id;
      const std::string& comp = row.fields[4];
      if (comp != "completed" && comp != "in-progress")
        throw LoadError(path, row.line, "completion must be completed or in-progress");
      fresh.completed = comp == "completed";
      fresh.anchor = row.fields[5];
      rules.push_back(std::move(fresh));
      rule = &rules.back();
    }
    rule->effects.push_back({row.fields[1], row.fields[2], row.fields[3]});
  }
  return rules;
}

namespace detail {

inline void Fire(std::vector<std::string>* fired, const std::string& id) {
  if (std::find(fired->begin(), fired->end(), id) == fired->end())
    fired->push_back(id);
}

inline void ApplyEffect(Inventory* inv, const DiachronicRule& rule,
                        const RuleEffect& e) {
  if (e.kind == "shengmu-set" || e.kind == "shengmu-note") {
    ShengmuCategory* cat = inv->FindShengmu(e.target);
    if (!cat)
      throw ConfigError("rule " + rule.id + " targets unknown category '" +
                        e.target + "'");
    if (!cat->adjusted_set) {
      cat->adjusted = cat->baseline;
      cat->adjusted_set = true;
    }
    for (const auto& tok : SplitOn(e.effect, ' ')) {
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw ConfigError("rule " + rule.id + ": bad effect token '" + tok + "'");
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "value") {
        if (val == "0") {
          cat->adjusted.reset();
        } else {
          Word w = ParseIpa(val);
          if (w.size() != 1)
            throw ConfigError("rule " + rule.id + ": value must be one segment");
          cat->adjusted = w[0];
        }
      } else if (key == "status") {
        if (val == "lost") cat->status = CategoryStatus::kLost;
        else if (val == "merged") cat->status = CategoryStatus::kMerged;
        else if (val == "in-progress") cat->status = CategoryStatus::kInProgress;
        else if (val == "stable") cat->status = CategoryStatus::kStable;
        else throw ConfigError("rule " + rule.id + ": bad status '" + val + "'");
      } else {
        throw ConfigError("rule " + rule.id + ": bad effect key '" + key + "'");
      }
    }
    Fire(&cat->fired, rule.id);
    return;
  }
  if (e.kind == "coda-rewrite") {
    Word target = ParseIpa(e.target), repl = ParseIpa(e.effect);
    if (target.size() != 1 || repl.size() != 1)
      throw ConfigError("rule " + rule.id + ": coda-rewrite wants one segment each side");
    for (auto& rime : inv->yunmu) {
      if (!rime.adjusted_set) {
        rime.adjusted = rime.variants;
        rime.adjusted_set = true;
      }
      bool touched = false;
      for (auto& [ap, rv] : rime.adjusted) {
        if (rv.coda && rv.coda->symbol == target[0].symbol) {
          rv.coda = repl[0];
          touched = true;
        }
      }
      if (touched) Fire(&rime.fired, rule.id);
    }
    return;
  }
  if (e.kind == "nucleus-rewrite" || e.kind == "rime-note") {
    auto colon = e.target.find(':');
    std::string rime_name =
        colon == std::string::npos ? e.target : e.target.substr(0, colon);
    YunmuCategory* cat = inv->FindYunmu(rime_name);
    if (!cat)
      throw ConfigError("rule " + rule.id + " targets unknown rime '" +
                        rime_name + "'");
    if (!cat->adjusted_set) {
      cat->adjusted = cat->variants;
      cat->adjusted_set = true;
    }
    if (e.kind == "nucleus-rewrite") {
      if (colon == std::string::npos)
        throw ConfigError("rule " + rule.id + ": nucleus-rewrite wants rime:aperture");
      Aperture ap = ApertureFromString(e.target.substr(colon + 1), "rule", 0);
      auto it = cat->adjusted.find(ap);
      if (it == cat->adjusted.end())
        throw ConfigError("rule " + rule.id + ": no variant " + e.target);
      Word w = ParseIpa(e.effect);
      if (w.size() != 1 || !w[0].IsVowel())
        throw ConfigError("rule " + rule.id + ": nucleus must be one vowel");
      it->second.nucleus = w[0];
    } else {
      cat->status = CategoryStatus::kInProgress;
    }
    Fire(&cat->fired, rule.id);
    return;
  }
  throw ConfigError("rule " + rule.id + ": unknown effect kind '" + e.kind + "'");
}

}  // namespace detail

struct ApplyOptions {
  bool apply_in_progress = false;
};

// Applies completed rules, plus in-progress ones when asked. Idempotent:
// effects are absolute assignments over the current stage values.
inline Inventory ApplyChanges(const Inventory& baseline,
                              const std::vector<DiachronicRule>& rules,
                              ApplyOptions options = {}) {
  Inventory inv = baseline;
  for (const auto& rule : rules) {
    if (!rule.completed && !options.apply_in_progress) continue;
    for (const auto& effect : rule.effects)
      detail::ApplyEffect(&inv, rule, effect);
  }
  inv.in_progress_applied = options.apply_in_progress;
  return inv;
}

// ---------------------------------------------------------------------------
// Per-character category assignments.

enum class Provenance { kCited, kUser };

struct CharacterEntry {
  std::string ch;        // one code point
  std::string shengmu;   // category name; may be a pseudo-category
  bool pseudo = false;   // erhua or the coda-n device
  std::optional<std::pair<std::string, Aperture>> yunmu;
  // Offer order within the category's ST candidate set (0 = not offered);
  // filled from the st_candidates table after load.
  int st_rank = 0;
  Provenance provenance = Provenance::kCited;
  std::string note;
};

// A pseudo-category for ST devices that are not initials (the rhotacized
// rime class and the coda-n device), kept so the summary tables stay
// uniform with the initial categories.
struct PseudoCategory {
  std::string name;
  std::string exemplar;
  Segment value;
  std::string anchor;
};

struct CharacterTable {
  std::map<std::string, CharacterEntry> entries;
  std::vector<PseudoCategory> pseudo;
  // Category name -> ST characters in offer order.
  std::map<std::string, std::vector<std::string>> st_candidates;

  const PseudoCategory* FindPseudo(const std::string& name) const {
    for (const auto& p : pseudo)
      if (p.name == name || p.exemplar == name) return &p;
    return nullptr;
  }

  // Bracketed substitute forms resolve like their base character.
  const CharacterEntry& Lookup(const std::string& ch) const {
    std::string key = ch;
    if (key.size() >= 2 && key.front() == '[' && key.back() == ']')
      key = key.substr(1, key.size() - 2);
    auto it = entries.find(key);
    if (it == entries.end())
      throw LookupError("unknown transcription character '" + key + "' (U+" +
                        [&] {
                          std::size_t i = 0;
                          char32_t cp = Utf8Next(key, &i);
                          char buf[8];
                          std::snprintf(buf, sizeof buf, "%04X",
                                        static_cast<unsigned>(cp));
                          return std::string(buf);
                        }() +
                        ")");
    return it->second;
  }
};

inline std::vector<PseudoCategory> LoadPseudoCategories(
    const std::string& path) {
  std::vector<PseudoCategory> out;
  for (const auto& row : ReadTsv(path, 4)) {
    PseudoCategory p;
    p.name = row.fields[0];
    p.exemplar = row.fields[1];
    Word w = ParseIpa(row.fields[2]);
    if (w.size() != 1)
      throw LoadError(path, row.line, "pseudo-category value must be one segment");
    p.value = w[0];
    p.anchor = row.fields[3];
    out.push_back(std::move(p));
  }
  return out;
}

// Character table columns: character, shengmu label, yunmu label + aperture
// (or -), provenance, note. Every character must resolve to exactly one
// entry across all loaded files.
inline void LoadCharacters(const std::string& path, const Inventory& inv,
                           CharacterTable* table, Provenance default_prov) {
  for (const auto& row : ReadTsv(path, 5)) {
    CharacterEntry e;
    e.ch = row.fields[0];
    if (Utf8Length(e.ch) != 1)
      throw LoadError(path, row.line,
                      "character field must be one code point: '" + e.ch + "'");
    const std::string& sm = row.fields[1];
    if (const PseudoCategory* p = table->FindPseudo(sm)) {
      e.shengmu = p->name;
      e.pseudo = true;
    } else if (const ShengmuCategory* c = inv.FindShengmu(sm)) {
      e.shengmu = c->name;
    } else {
      throw LoadError(path, row.line, "unknown shengmu category '" + sm + "'");
    }
    if (row.fields[2] != "-") {
      auto colon = row.fields[2].find(':');
      if (colon == std::string::npos)
        throw LoadError(path, row.line, "yunmu field wants rime:aperture");
      std::string rime = row.fields[2].substr(0, colon);
      Aperture ap = ApertureFromString(row.fields[2].substr(colon + 1), path,
                                       row.line);
      const YunmuCategory* y = inv.FindYunmu(rime);
      if (!y) throw LoadError(path, row.line, "unknown rime '" + rime + "'");
      if (!y->variants.count(ap))
        throw LoadError(path, row.line,
                        "rime " + rime + " has no " +
                            std::string(ToString(ap)) + " variant");
      e.yunmu = {y->name, ap};
    }
    const std::string& prov = row.fields[3];
    if (prov == "cited" || prov == "paper-cited") e.provenance = Provenance::kCited;
    else if (prov == "user" || prov == "user-supplied") e.provenance = Provenance::kUser;
    else throw LoadError(path, row.line, "unknown provenance '" + prov + "'");
    (void)default_prov;
    if (row.fields.size() > 4) e.note = row.fields[4];
    if (table->entries.count(e.ch))
      throw LoadError(path, row.line,
                      "character '" + e.ch + "' already defined; every "
                      "character must resolve to exactly one entry");
    table->entries[e.ch] = std::move(e);
  }
}

// ST candidate sets: category, space-separated characters in offer order,
// anchor. Back-fills each listed character's rank.
inline void LoadStCandidates(const std::string& path, CharacterTable* table) {
  for (const auto& row : ReadTsv(path, 3)) {
    const std::string& category = row.fields[0];
    if (table->st_candidates.count(category))
      throw LoadError(path, row.line, "duplicate category '" + category + "'");
    std::vector<std::string> chars = SplitOn(row.fields[1], ' ');
    int rank = 0;
    for (const auto& ch : chars) {
      auto it = table->entries.find(ch);
      if (it == table->entries.end())
        throw LoadError(path, row.line,
                        "candidate '" + ch + "' has no character entry");
      it->second.st_rank = ++rank;
    }
    table->st_candidates[category] = std::move(chars);
  }
}

// ---------------------------------------------------------------------------
// Serialization for the round-trip check on the inventory.

inline void SaveInventory(const Inventory& inv, const std::string& shengmu_path,
                          const std::string& yunmu_path) {
  std::ofstream sm(shengmu_path, std::ios::binary);
  if (!sm) throw OutputError("cannot write " + shengmu_path);
  for (const auto& c : inv.shengmu) {
    sm << c.name << '\t' << c.exemplar << '\t'
       << (c.alias.empty() ? "-" : c.alias) << '\t'
       << (c.baseline ? Render(*c.baseline) : "0") << '\t' << c.anchor << '\n';
  }
  std::ofstream ym(yunmu_path, std::ios::binary);
  if (!ym) throw OutputError("cannot write " + yunmu_path);
  for (const auto& c : inv.yunmu) {
    for (const auto& [ap, rv] : c.variants) {
      ym << c.name << '\t' << c.exemplar << '\t' << ToString(ap) << '\t'
         << rv.Phonetic() << '\t' << rv.phonemic << '\t' << rv.label << '\t'
         << c.anchor << '\n';
    }
  }
}

}  // namespace hhy

#endif  // HHY_PHONOLOGY_HPP_
