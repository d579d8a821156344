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
// Command-line surface. Exit status: 0 success, 1 domain errors found
// (for example validation errors), 2 usage or I/O failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hhy/analyze.hpp"
#include "hhy/corpus.hpp"
#include "hhy/dataset.hpp"
#include "hhy/engine.hpp"
#include "hhy/report.hpp"

namespace hhy {
namespace {

struct CommonOptions {
  std::string data_dir;
  std::string format = "table";
  std::string stage = "late-ming";
  bool apply_in_progress = false;
  bool legacy_m_coda = false;
};

Stage StageOf(const CommonOptions& opt) {
  return opt.stage == "baseline" ? Stage::kBaseline : Stage::kLateMing;
}

Engine LoadEngine(const CommonOptions& opt) {
  EngineOptions eo;
  eo.apply_in_progress = opt.apply_in_progress;
  eo.legacy_m_coda = opt.legacy_m_coda;
  return Engine::Load(opt.data_dir, eo);
}

// One atomic write per invocation.
void WriteOut(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw OutputError("cannot write " + out_path);
  out << text;
}

Word ReadWord(const Engine& engine, const std::string& ipa,
              const std::string& text, const std::string& convention) {
  if (!ipa.empty()) return ParseIpa(ipa);
  auto it = engine.conventions.find(convention);
  if (it == engine.conventions.end())
    throw ConfigError("unknown convention '" + convention + "'");
  return ConvertRomanization(text, it->second);
}

std::vector<Word> ReadWords(const Engine& engine, const std::string& ipa,
                            const std::string& text,
                            const std::string& convention) {
  std::vector<Word> words;
  const std::string& src = !ipa.empty() ? ipa : text;
  for (const auto& piece : SplitOn(src, ' '))
    words.push_back(ReadWord(engine, !ipa.empty() ? piece : "",
                             !ipa.empty() ? "" : piece, convention));
  return words;
}

ReleasePolicy PolicyFor(const Engine& engine,
                        const std::optional<Section>& section,
                        const std::string& flag) {
  if (flag == "released") return ReleasePolicy::kReleased;
  if (flag == "unreleased") return ReleasePolicy::kUnreleased;
  if (section) return engine.Profile(*section).release;
  return ReleasePolicy::kDefault;
}

int RunInventory(const CommonOptions& common, const std::string& out) {
  Engine engine = LoadEngine(common);
  const Inventory& inv = engine.At(StageOf(common));
  std::ostringstream text;
  if (common.format == "json") {
    Json j;
    Json sm = Json::array();
    for (const auto& c : inv.shengmu) {
      Json cj;
      cj["name"] = c.name;
      cj["exemplar"] = c.exemplar;
      cj["value"] = c.ValueAt(StageOf(common))
                        ? Render(*c.ValueAt(StageOf(common)))
                        : "0";
      cj["status"] = ToString(c.status);
      if (!c.fired.empty()) cj["rules"] = c.fired;
      cj["anchor"] = c.anchor;
      sm.push_back(cj);
    }
    j["shengmu"] = sm;
    Json ym = Json::array();
    for (const auto& c : inv.yunmu) {
      for (const auto& [ap, rv] : c.VariantsAt(StageOf(common))) {
        Json cj;
        cj["name"] = c.name;
        cj["exemplar"] = c.exemplar;
        cj["aperture"] = ToString(ap);
        cj["phonetic"] = rv.Phonetic();
        cj["phonemic"] = rv.phonemic;
        cj["label"] = rv.label;
        if (!c.fired.empty()) cj["rules"] = c.fired;
        ym.push_back(cj);
      }
    }
    j["yunmu"] = ym;
    text << j.dump(2) << "\n";
  } else {
    text << "# shengmu\n";
    for (const auto& c : inv.shengmu) {
      text << c.name << '\t' << c.exemplar << '\t'
           << (c.ValueAt(StageOf(common)) ? Render(*c.ValueAt(StageOf(common)))
                                          : "0")
           << '\t' << ToString(c.status) << '\n';
    }
    text << "# yunmu\n";
    for (const auto& c : inv.yunmu) {
      for (const auto& [ap, rv] : c.VariantsAt(StageOf(common)))
        text << c.name << '\t' << c.exemplar << '\t' << ToString(ap) << '\t'
             << rv.Phonetic() << '\t' << rv.phonemic << '\t' << rv.label
             << '\n';
    }
  }
  WriteOut(text.str(), out);
  return 0;
}

int RunLookup(const CommonOptions& common, const std::string& ch,
              const std::string& out) {
  Engine engine = LoadEngine(common);
  const CharacterEntry& e = engine.chars.Lookup(ch);
  std::ostringstream text;
  if (common.format == "json") {
    Json j;
    j["character"] = e.ch;
    j["shengmu"] = e.shengmu;
    if (e.pseudo) j["pseudo_category"] = true;
    if (e.yunmu)
      j["yunmu"] = e.yunmu->first + ":" + ToString(e.yunmu->second);
    if (const RimeValue* rv = engine.Rime(e)) j["rime_label"] = rv->label;
    j["st_candidate_rank"] = e.st_rank;
    j["provenance"] = e.provenance == Provenance::kCited ? "cited" : "user";
    j["note"] = e.note;
    text << j.dump(2) << "\n";
  } else {
    text << e.ch << '\t' << e.shengmu;
    if (e.pseudo) text << " (pseudo-category)";
    if (e.yunmu)
      text << '\t' << e.yunmu->first << ':' << ToString(e.yunmu->second);
    else
      text << "\t-";
    text << "\tst=" << e.st_rank << '\t'
         << (e.provenance == Provenance::kCited ? "cited" : "user") << '\t'
         << e.note << '\n';
  }
  WriteOut(text.str(), out);
  return 0;
}

int RunSegment(const CommonOptions& common, const std::string& ipa,
               const std::string& input, const std::string& convention,
               const std::string& out) {
  Engine engine = LoadEngine(common);
  std::vector<Word> words = ReadWords(engine, ipa, input, convention);
  std::ostringstream text;
  if (common.format == "json") {
    Json arr = Json::array();
    for (const auto& w : words) {
      Json wj = Json::array();
      for (const auto& s : w) {
        Json sj;
        sj["symbol"] = Render(s);
        sj["kind"] = s.IsVowel() ? "vowel" : "consonant";
        if (s.IsConsonant()) {
          sj["place"] = FeaturePattern::PlaceName(s.place);
          sj["manner"] = FeaturePattern::MannerName(s.manner);
          sj["voiced"] = s.voiced;
          sj["aspirated"] = s.aspirated;
        }
        if (s.underspecified) sj["underspecified"] = true;
        wj.push_back(sj);
      }
      arr.push_back(wj);
    }
    text << arr.dump(2) << "\n";
  } else {
    for (const auto& w : words) {
      for (const auto& s : w) {
        text << Render(s) << '\t' << (s.IsVowel() ? "vowel" : "consonant");
        if (s.IsConsonant())
          text << '\t' << FeaturePattern::PlaceName(s.place) << '\t'
               << FeaturePattern::MannerName(s.manner) << '\t'
               << (s.voiced ? "voiced" : "voiceless");
        if (s.underspecified) text << "\tunderspecified";
        text << '\n';
      }
      text << '\n';
    }
  }
  WriteOut(text.str(), out);
  return 0;
}

int RunClassify(const CommonOptions& common, const std::string& ipa,
                const std::string& input, const std::string& convention,
                const std::string& section_code, const std::string& policy,
                const std::string& out) {
  Engine engine = LoadEngine(common);
  std::optional<Section> section = SectionFromString(section_code);
  std::vector<Word> words = ReadWords(engine, ipa, input, convention);
  ParseOptions popt;
  popt.legacy_m_coda = common.legacy_m_coda;
  std::ostringstream text;
  Json arr = Json::array();
  for (const auto& word : words) {
    ClassifiedWord cls =
        ClassifyWord(word, PolicyFor(engine, section, policy), popt);
    if (common.format == "json") {
      Json wj;
      wj["word"] = Render(word);
      wj["segments"] = ClassificationJson(word, cls.slots);
      if (!cls.warnings.empty()) wj["warnings"] = cls.warnings;
      arr.push_back(wj);
    } else {
      text << Render(word) << '\n';
      for (const auto& slot : cls.slots) {
        text << "  " << Render(word[slot.segment_index]) << '\t'
             << ToString(slot.role);
        if (slot.role == StructuralRole::kStCandidate)
          text << '\t' << ToString(slot.condition) << '\t'
               << ToString(slot.verdict);
        else
          text << "\t-\tMT";
        if (slot.ambiguous_medial) text << "\tambiguous-medial";
        text << '\n';
      }
      for (const auto& w : cls.warnings) text << "  ! " << w << '\n';
    }
  }
  if (common.format == "json") text << arr.dump(2) << "\n";
  WriteOut(text.str(), out);
  return 0;
}

int RunPredict(const CommonOptions& common, const std::string& ipa,
               const std::string& input, const std::string& convention,
               const std::string& section_code, const std::string& out) {
  Engine engine = LoadEngine(common);
  auto section = SectionFromString(section_code);
  if (!section) {
    std::cerr << "predict requires --section\n";
    return 2;
  }
  std::vector<Word> words = ReadWords(engine, ipa, input, convention);
  Prediction prediction = Predict(engine, words, *section);
  std::ostringstream text;
  if (common.format == "json") {
    text << PredictionJson(engine, words, prediction).dump(2) << "\n";
  } else {
    for (const auto& wp : prediction.words) {
      const Word& word = words[wp.word_index];
      text << Render(word) << '\n';
      for (const auto& syl : wp.syllables) {
        text << "  syllable";
        if (syl.onset.segment)
          text << "  onset " << Render(word[*syl.onset.segment]);
        text << "  nucleus " << Render(word[syl.rime.nucleus]);
        if (syl.rime.coda) text << "  coda " << Render(word[*syl.rime.coda]);
        text << "\n    onset candidates:";
        for (const auto& c : syl.onset.candidates) {
          const ShengmuCategory* cat = engine.baseline.FindShengmu(c.category);
          text << ' ' << (cat ? cat->Label() : c.category);
          if (c.rank > 1) text << "(secondary)";
        }
        text << "\n    rime candidates:";
        for (const auto& l : syl.rime.labels) text << ' ' << l;
        if (syl.rime.coda) text << " + coda " << syl.rime.coda_class;
        text << '\n';
      }
      for (const auto& st : wp.st_slots) {
        text << "  st " << Render(word[st.segment]) << '\t'
             << ToString(st.condition) << '\t' << ToString(st.verdict)
             << "\n    candidates:";
        for (const auto& c : st.candidates) {
          text << ' ' << c.ch;
          if (c.rank > 1) text << "(secondary)";
        }
        text << '\n';
      }
    }
  }
  WriteOut(text.str(), out);
  return 0;
}

int RunValidate(const CommonOptions& common, const std::string& corpus_path,
                const std::string& index, const std::string& out) {
  Engine engine = LoadEngine(common);
  auto corpus = LoadCorpus(corpus_path, engine.conventions);
  WitnessIndex witnesses = BuildWitnessIndex(engine, corpus);
  std::ostringstream text;
  Json arr = Json::array();
  bool any_errors = false;
  for (const auto& entry : corpus) {
    if (!index.empty() && entry.index != index) continue;
    ValidationReport report = Validate(engine, entry, &witnesses);
    any_errors = any_errors || !report.Conformant();
    if (common.format == "json")
      arr.push_back(ValidationReportJson(report));
    else
      text << RenderValidationReport(report);
  }
  if (common.format == "json") text << arr.dump(2) << "\n";
  WriteOut(text.str(), out);
  return any_errors ? 1 : 0;
}

int RunAnalyze(const CommonOptions& common, const std::string& corpus_path,
               bool st_id, const std::string& freq, bool consistency,
               int top_k, int jobs, const std::string& out) {
  Engine engine = LoadEngine(common);
  auto corpus = LoadCorpus(corpus_path, engine.conventions);
  std::ostringstream text;
  if (st_id) {
    auto reports = IdentifyStChars(engine, corpus, jobs);
    if (common.format == "json")
      text << StReportsJson(reports).dump(2) << "\n";
    else
      text << RenderStReports(engine, reports);
  }
  if (!freq.empty()) {
    FrequencyAxis axis;
    if (freq == "a-e") axis = {"a-e", {"/a/", "/ə/"}};
    else if (freq == "i") axis = {"i", {"/i/"}};
    else {
      axis.name = freq;
      axis.rime_labels = SplitOn(freq, ',');
    }
    FrequencyTable table = FrequencyTables(engine, corpus, axis, jobs);
    if (common.format == "json")
      text << FrequencyTableJson(table).dump(2) << "\n";
    else
      text << RenderFrequencyTable(table, top_k);
  }
  if (consistency) {
    auto findings = ConsistencyCheck(engine, corpus);
    if (common.format == "json") {
      Json arr = Json::array();
      for (const auto& f : findings) {
        Json j;
        j["severity"] = ToString(f.severity);
        j["code"] = f.code;
        j["morpheme"] = f.morpheme;
        j["entries"] = f.entries;
        j["message"] = f.message;
        arr.push_back(j);
      }
      text << arr.dump(2) << "\n";
    } else {
      for (const auto& f : findings) {
        text << ToString(f.severity) << '\t' << f.code << '\t' << f.morpheme
             << '\t';
        for (std::size_t i = 0; i < f.entries.size(); ++i)
          text << (i ? "," : "") << f.entries[i];
        text << '\t' << f.message << '\n';
      }
    }
  }
  WriteOut(text.str(), out);
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{
      "Rule-based engine for the HHY Chinese-character transcription "
      "system"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  CommonOptions common;
  app.add_option("--data-dir", common.data_dir,
                 "Seed data directory (default: HHY_DATA_DIR or built-in)");
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  app.add_option("--stage", common.stage, "Phonological stage")
      ->check(CLI::IsMember({"baseline", "late-ming"}))
      ->capture_default_str();
  app.add_flag("--apply-in-progress", common.apply_in_progress,
               "Also apply in-progress sound changes");
  app.add_flag("--legacy-m-coda", common.legacy_m_coda,
               "Accept [m] codas in main transcription (always warns)");

  std::string out, ipa, input, convention = "ipa", section, index;
  std::string policy = "profile", freq;
  std::string lookup_char, corpus_path, report_kind;
  bool st_id = false, consistency = false;
  int top_k = 2, jobs = 1;

  CLI::App* inventory = app.add_subcommand(
      "inventory", "Print the category inventories at the chosen stage");
  inventory->add_option("--out", out, "Output path (default stdout)");

  CLI::App* lookup =
      app.add_subcommand("lookup", "Look up one transcription character");
  lookup->add_option("character", lookup_char, "Character to look up")
      ->required();
  lookup->add_option("--out", out, "");

  auto add_word_opts = [&](CLI::App* cmd) {
    cmd->add_option("--ipa", ipa, "IPA input (space-separated words)");
    cmd->add_option("--text", input, "Romanized input");
    cmd->add_option("--convention", convention,
                    "Romanization convention for --text")
        ->capture_default_str();
    cmd->add_option("--out", out, "");
  };

  CLI::App* segment =
      app.add_subcommand("segment", "Tokenize input into feature bundles");
  add_word_opts(segment);

  CLI::App* classify = app.add_subcommand(
      "classify", "Template roles and ST verdicts per segment");
  add_word_opts(classify);
  classify->add_option("--section", section, "Section code (KO JA MN ...)");
  classify->add_option("--release-policy", policy,
                       "released | unreleased | profile")
      ->check(CLI::IsMember({"released", "unreleased", "profile"}))
      ->capture_default_str();

  CLI::App* predict = app.add_subcommand(
      "predict", "Candidate transcription skeleton for a word");
  add_word_opts(predict);
  predict->add_option("--section", section, "Section code")->required();

  CLI::App* validate =
      app.add_subcommand("validate", "Check corpus entries for conformance");
  validate->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  validate->add_option("--index", index, "Only this entry");
  validate->add_option("--out", out, "");

  CLI::App* analyze = app.add_subcommand("analyze", "Corpus analytics");
  analyze->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  analyze->add_flag("--st-id", st_id, "ST-character identification");
  analyze->add_option("--freq", freq,
                      "Frequency table: a-e, i, or comma-joined labels");
  analyze->add_flag("--consistency", consistency, "Morpheme consistency");
  analyze->add_option("--top", top_k, "Top-k values per section")
      ->capture_default_str();
  analyze->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  analyze->add_option("--out", out, "");

  CLI::App* exporter =
      app.add_subcommand("export", "Write a report to a file");
  exporter->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  exporter->add_option("--report", report_kind, "st-id | freq-a-e | freq-i")
      ->required()
      ->check(CLI::IsMember({"st-id", "freq-a-e", "freq-i"}));
  exporter->add_option("--out", out, "Output path")->required();
  exporter->add_option("--top", top_k, "")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (inventory->parsed()) return RunInventory(common, out);
    if (lookup->parsed()) return RunLookup(common, lookup_char, out);
    if (segment->parsed())
      return RunSegment(common, ipa, input, convention, out);
    if (classify->parsed())
      return RunClassify(common, ipa, input, convention, section, policy, out);
    if (predict->parsed())
      return RunPredict(common, ipa, input, convention, section, out);
    if (validate->parsed())
      return RunValidate(common, corpus_path, index, out);
    if (analyze->parsed())
      return RunAnalyze(common, corpus_path, st_id, freq, consistency, top_k,
                        jobs, out);
    if (exporter->parsed()) {
      if (report_kind == "st-id")
        return RunAnalyze(common, corpus_path, true, "", false, top_k, 1, out);
      return RunAnalyze(common, corpus_path, false,
                        report_kind == "freq-a-e" ? "a-e" : "i", false, top_k,
                        1, out);
    }
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OutputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace
}  // namespace hhy

int main(int argc, char** argv) { return hhy::Main(argc, argv); }
