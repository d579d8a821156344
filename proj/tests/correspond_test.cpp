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

#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "hhy/dataset.hpp"
#include "hhy/engine.hpp"
#include "hhy/report.hpp"

namespace hhy {
namespace {

const Engine& TestEngine() {
  static const Engine engine = Engine::Load();
  return engine;
}

std::vector<std::string> CategoryNames(const std::vector<RankedCategory>& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(c.category);
  return out;
}

std::vector<std::string> CharNames(const std::vector<StCandidate>& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(c.ch);
  return out;
}

TEST(MtShengmuCandidates, AspiratedVelarStop) {
  auto cands = MtShengmuCandidates(TestEngine().correspondences,
                                   ParseIpa("kʰ")[0]);
  ASSERT_FALSE(cands.empty());
  EXPECT_EQ(cands[0].category, "xi");
}

TEST(MtShengmuCandidates, BilabialNasal) {
  auto cands = MtShengmuCandidates(TestEngine().correspondences,
                                   ParseIpa("m")[0]);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].category, "ming");
}

TEST(MtShengmuCandidates, VoicedPostalveolarFricative) {
  auto cands = MtShengmuCandidates(TestEngine().correspondences,
                                   ParseIpa("ʒ")[0]);
  ASSERT_FALSE(cands.empty());
  EXPECT_EQ(cands[0].category, "ri");
}

TEST(MtShengmuCandidates, SectionSplitStops) {
  Segment k = ParseIpa("k")[0];
  auto uy = MtShengmuCandidates(TestEngine().correspondences, k, Section::kUY);
  ASSERT_FALSE(uy.empty());
  EXPECT_EQ(uy[0].category, "xi");
  auto ko = MtShengmuCandidates(TestEngine().correspondences, k, Section::kKO);
  ASSERT_FALSE(ko.empty());
  EXPECT_EQ(ko[0].category, "jian");
}

TEST(MtShengmuCandidates, EmptyResultIsValid) {
  // No category renders an onset velar nasal.
  auto cands = MtShengmuCandidates(TestEngine().correspondences,
                                   ParseIpa("ŋ")[0]);
  EXPECT_TRUE(cands.empty());
}

TEST(MtYunmuCandidates, HighFrontVowel) {
  auto labels = MtYunmuCandidates(TestEngine().correspondences,
                                  ParseIpa("i")[0]);
  EXPECT_EQ(labels, (std::vector<std::string>{"/jə/", "/jĩ/"}));
}

TEST(MtYunmuCandidates, BackMidVowel) {
  auto labels = MtYunmuCandidates(TestEngine().correspondences,
                                  ParseIpa("o")[0]);
  EXPECT_EQ(labels, std::vector<std::string>{"/wo/"});
}

TEST(MtYunmuCandidates, MidCentralVowel) {
  auto labels = MtYunmuCandidates(TestEngine().correspondences,
                                  ParseIpa("ə")[0]);
  EXPECT_EQ(labels, std::vector<std::string>{"/ə/"});
}

TEST(MtYunmuCandidates, MedialOpensPalatalRime) {
  Segment j = ParseIpa("j")[0];
  auto labels = MtYunmuCandidates(TestEngine().correspondences,
                                  ParseIpa("ə")[0], j);
  ASSERT_EQ(labels.size(), 2u);
  EXPECT_EQ(labels[0], "/ə/");
  EXPECT_EQ(labels[1], "/jə/");
}

TEST(MtYunmuCandidates, SectionLimitedExtension) {
  Segment schwa_family = ParseIpa("ɨ")[0];
  auto generic = MtYunmuCandidates(TestEngine().correspondences, schwa_family);
  EXPECT_TRUE(generic.empty());
  auto korean = MtYunmuCandidates(TestEngine().correspondences, schwa_family,
                                  std::nullopt, Section::kKO);
  EXPECT_EQ(korean, std::vector<std::string>{"/ə/"});
}

TEST(StCharacterCandidates, VoicelessAlveolarFricative) {
  auto cands = StCharacterCandidates(TestEngine().correspondences,
                                     TestEngine().chars, ParseIpa("s")[0]);
  EXPECT_EQ(CharNames(cands),
            (std::vector<std::string>{"思", "習", "糸", "速"}));
}

TEST(StCharacterCandidates, TrillPrefersRhotacizedRimes) {
  auto cands = StCharacterCandidates(TestEngine().correspondences,
                                     TestEngine().chars, ParseIpa("r")[0]);
  ASSERT_GE(cands.size(), 2u);
  EXPECT_EQ(cands[0].ch, "兒");
  EXPECT_EQ(cands[0].category, "erhua");
  EXPECT_EQ(cands[0].rank, 1);
  EXPECT_EQ(cands[1].ch, "二");
  // The lai family follows as the secondary family.
  ASSERT_GE(cands.size(), 3u);
  EXPECT_EQ(cands[2].category, "lai");
  EXPECT_EQ(cands[2].rank, 2);
}

TEST(StCharacterCandidates, LateralPrefersLai) {
  auto cands = StCharacterCandidates(TestEngine().correspondences,
                                     TestEngine().chars, ParseIpa("l")[0]);
  ASSERT_GE(cands.size(), 6u);
  EXPECT_EQ(CharNames(cands),
            (std::vector<std::string>{"勒", "力", "里", "刺", "兒", "二"}));
  EXPECT_EQ(cands[0].rank, 1);
  EXPECT_EQ(cands[4].rank, 2);
}

TEST(StCharacterCandidates, CodaNasalDevice) {
  auto cands = StCharacterCandidates(TestEngine().correspondences,
                                     TestEngine().chars, ParseIpa("n")[0]);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].ch, "音");
  EXPECT_EQ(cands[0].category, "yunwei-n");
}

TEST(RuleTables, ExcludedRulesLoadButNeverFire) {
  int excluded = 0;
  for (const auto& rule : TestEngine().correspondences.mt_shengmu)
    excluded += rule.confidence == Confidence::kExcluded;
  for (const auto& rule : TestEngine().correspondences.st)
    excluded += rule.confidence == Confidence::kExcluded;
  EXPECT_GT(excluded, 0) << "excluded rows stay loadable for audit";

  // The not-adopted reading put [z] under xin for one section; candidates
  // never show it.
  auto cands = MtShengmuCandidates(TestEngine().correspondences,
                                   ParseIpa("z")[0], Section::kTB);
  for (const auto& c : cands) EXPECT_NE(c.category, "xin");
  // Likewise the voiced-affricate reading for one section's chuan.
  auto cm = MtShengmuCandidates(TestEngine().correspondences,
                                ParseIpa("dʒʰ")[0], Section::kCM);
  for (const auto& c : cm) EXPECT_NE(c.category, "chang");
}

TEST(Predict, SingleVowelWord) {
  auto p = Predict(TestEngine(), {ParseIpa("a")}, Section::kKO);
  ASSERT_EQ(p.words.size(), 1u);
  ASSERT_EQ(p.words[0].syllables.size(), 1u);
  const auto& syl = p.words[0].syllables[0];
  EXPECT_FALSE(syl.onset.segment.has_value());
  ASSERT_EQ(syl.onset.candidates.size(), 1u);
  EXPECT_EQ(syl.onset.candidates[0].category, "yun");
  ASSERT_FALSE(syl.rime.labels.empty());
  EXPECT_EQ(syl.rime.labels[0], "/a/");
  EXPECT_TRUE(p.words[0].st_slots.empty());
}

TEST(Predict, UncoverableOnsetNamesSegment) {
  try {
    Predict(TestEngine(), {ParseIpa("ŋa")}, Section::kKO);
    FAIL() << "expected an uncoverable-segment error";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("ŋ"), std::string::npos);
  }
}

struct LoadedCorpus {
  std::vector<CorpusEntry> entries;
  const CorpusEntry& ByIndex(const std::string& index) const {
    for (const auto& e : entries)
      if (e.index == index) return e;
    throw std::runtime_error("no entry " + index);
  }
};

const LoadedCorpus& Attested() {
  static const LoadedCorpus corpus = [] {
    LoadedCorpus c;
    c.entries = LoadCorpus(TestEngine().data_dir + "/corpora/attested.tsv",
                           TestEngine().conventions);
    return c;
  }();
  return corpus;
}

TEST(Predict, ChapSkeletonContainsAttestedCategories) {
  const CorpusEntry& entry = Attested().ByIndex("P-1622");
  auto p = Predict(TestEngine(), entry.words, entry.section);
  ASSERT_EQ(p.words.size(), 1u);
  const auto& syl = p.words[0].syllables[0];
  EXPECT_EQ(CategoryNames(syl.onset.candidates)[0], "chang");
  // The attested onset character's rime label sits in the candidate list.
  auto labels = syl.rime.labels;
  EXPECT_NE(std::find(labels.begin(), labels.end(), "/jə/"), labels.end());
  ASSERT_EQ(p.words[0].st_slots.size(), 1u);
  EXPECT_EQ(p.words[0].st_slots[0].candidates[0].ch, "卜");
}

TEST(Predict, PrinSkeleton) {
  const CorpusEntry& entry = Attested().ByIndex("T-6");
  auto p = Predict(TestEngine(), entry.words, entry.section);
  ASSERT_EQ(p.words[0].st_slots.size(), 1u);
  EXPECT_EQ(p.words[0].st_slots[0].segment, 0);
  EXPECT_EQ(p.words[0].st_slots[0].candidates[0].ch, "卜");
  const auto& syl = p.words[0].syllables[0];
  EXPECT_EQ(syl.onset.candidates[0].category, "lai");
  EXPECT_EQ(syl.rime.coda_class, "n");
}

TEST(Align, PrinSpans) {
  const CorpusEntry& entry = Attested().ByIndex("T-6");
  auto cls = ClassifyEntry(TestEngine(), entry);
  auto alignment = AlignEntry(TestEngine(), entry, cls);
  ASSERT_EQ(alignment.chars.size(), 2u);
  EXPECT_EQ(alignment.chars[0].begin, 0);
  EXPECT_EQ(alignment.chars[0].end, 0);
  EXPECT_EQ(alignment.chars[1].begin, 1);
  EXPECT_EQ(alignment.chars[1].end, 3);
  EXPECT_TRUE(alignment.omitted_units.empty());
}

TEST(Align, KokQopSpans) {
  const CorpusEntry& entry = Attested().ByIndex("U-34");
  auto cls = ClassifyEntry(TestEngine(), entry);
  auto alignment = AlignEntry(TestEngine(), entry, cls);
  ASSERT_EQ(alignment.chars.size(), 4u);
  // 課 -> k ö ; 克 -> k ; 科 -> q o ; 卜 -> p
  EXPECT_EQ(alignment.chars[0].begin, 0);
  EXPECT_EQ(alignment.chars[0].end, 1);
  EXPECT_EQ(alignment.chars[1].begin, 2);
  EXPECT_EQ(alignment.chars[1].end, 2);
  EXPECT_EQ(alignment.chars[2].begin, 3);
  EXPECT_EQ(alignment.chars[2].end, 4);
  EXPECT_EQ(alignment.chars[3].begin, 5);
  EXPECT_EQ(alignment.chars[3].end, 5);
  EXPECT_EQ(alignment.total_cost, 0);
}

TEST(Align, MultiSyllableCoverage) {
  const CorpusEntry& entry = Attested().ByIndex("K-2");
  auto cls = ClassifyEntry(TestEngine(), entry);
  auto alignment = AlignEntry(TestEngine(), entry, cls);
  ASSERT_EQ(alignment.chars.size(), 1u);
  EXPECT_EQ(alignment.chars[0].units_covered, 2);
  EXPECT_EQ(alignment.chars[0].begin, 0);
  EXPECT_EQ(alignment.chars[0].end, 2);
}

TEST(Align, ImpossibleCoverIsAnError) {
  CorpusEntry entry;
  entry.section = Section::kKO;
  entry.index = "SYN-impossible";
  entry.gloss = "試";
  entry.characters = {{"哈", 'A', false}, {"嫩", 'C', false}};
  entry.reconstruction = "a";
  entry.words = {ParseIpa("a")};
  entry.convention = "ipa";
  EXPECT_THROW(
      {
        auto cls = ClassifyEntry(TestEngine(), entry);
        AlignEntry(TestEngine(), entry, cls);
      },
      AlignmentError);
}

const WitnessIndex& AttestedWitnesses() {
  static const WitnessIndex index =
      BuildWitnessIndex(TestEngine(), Attested().entries);
  return index;
}

TEST(Validate, K1Conformant) {
  auto report = Validate(TestEngine(), Attested().ByIndex("K-1"),
                         &AttestedWitnesses());
  EXPECT_TRUE(report.Conformant()) << RenderValidationReport(report);
  EXPECT_FALSE(report.Has("missing-st"));
}

TEST(Validate, CompoundOmissionIsPermitted) {
  auto report = Validate(TestEngine(), Attested().ByIndex("K-13"),
                         &AttestedWitnesses());
  EXPECT_TRUE(report.Conformant()) << RenderValidationReport(report);
  EXPECT_TRUE(report.Has("permitted-st-omission"));
}

TEST(Validate, UnwitnessedOmissionIsMissingSt) {
  CorpusEntry entry;
  entry.section = Section::kKO;
  entry.index = "SYN-tal";
  entry.gloss = "月";
  entry.characters = {{"得", 'A', false}};
  entry.reconstruction = "tal";
  entry.words = {ParseIpa("tal")};
  entry.convention = "ipa";
  auto report = Validate(TestEngine(), entry, &AttestedWitnesses());
  EXPECT_FALSE(report.Conformant());
  EXPECT_TRUE(report.Has("missing-st"));
}

TEST(Validate, MonotoneUnderWitnesses) {
  // Adding a witness can only downgrade missing-st, never raise severity.
  CorpusEntry entry;
  entry.section = Section::kKO;
  entry.index = "SYN-tal2";
  entry.gloss = "月";
  entry.characters = {{"得", 'A', false}};
  entry.reconstruction = "tal";
  entry.words = {ParseIpa("tal")};
  entry.convention = "ipa";
  auto bare = Validate(TestEngine(), entry, nullptr);
  EXPECT_TRUE(bare.Has("missing-st"));
  WitnessIndex with;
  with.Add("tal", "K-3");
  auto witnessed = Validate(TestEngine(), entry, &with);
  EXPECT_FALSE(witnessed.Has("missing-st"));
  EXPECT_TRUE(witnessed.Has("permitted-st-omission"));
  EXPECT_LE(witnessed.Count(Severity::kError), bare.Count(Severity::kError));
}

TEST(Validate, StWithoutConditionIsAnError) {
  CorpusEntry entry;
  entry.section = Section::kMS;  // unreleased final stops
  entry.index = "SYN-pat";
  entry.gloss = "試";
  entry.characters = {{"把", 'A', false}, {"忒", 'C', false}};
  entry.reconstruction = "pat";
  entry.words = {ParseIpa("pat")};
  entry.convention = "ipa";
  auto report = Validate(TestEngine(), entry, nullptr);
  EXPECT_FALSE(report.Conformant());
  EXPECT_TRUE(report.Has("st-without-condition"));
}

TEST(Validate, SuppliedAlignmentShapeChecks) {
  CorpusEntry entry;
  entry.section = Section::kKO;
  entry.index = "SYN-shape";
  entry.gloss = "試";
  entry.characters = {{"大", 'A', false}};
  entry.reconstruction = "tal";
  entry.words = {ParseIpa("tal")};
  entry.convention = "ipa";
  entry.alignment = std::vector<CharSpan>{{0, 0, 2}};  // 大 covering t-a-l
  auto report = Validate(TestEngine(), entry, nullptr);
  EXPECT_TRUE(report.Has("mt-coda-violation"));
}

TEST(Validate, EveryAttestedEntry) {
  // Candidate-set soundness over the worked entries: no errors anywhere.
  for (const auto& entry : Attested().entries) {
    auto report = Validate(TestEngine(), entry, &AttestedWitnesses());
    EXPECT_TRUE(report.Conformant())
        << entry.index << "\n"
        << RenderValidationReport(report);
  }
}

TEST(Consistency, StableMorphemesWithVaryingSt) {
  auto findings = ConsistencyCheck(TestEngine(), Attested().entries);
  bool st_varies = false;
  for (const auto& f : findings) {
    EXPECT_NE(f.code, "inconsistent-morpheme")
        << f.morpheme << " diverges unexpectedly";
    if (f.code == "st-presence-varies" && f.morpheme == "hanal")
      st_varies = true;
  }
  EXPECT_TRUE(st_varies);
}

TEST(Consistency, DivergentMorphemeFlagged) {
  auto corpus = Attested().entries;
  CorpusEntry variant;
  variant.section = Section::kKO;
  variant.index = "SYN-var";
  variant.gloss = "天";
  variant.characters = {{"何", 'A', false}, {"納", 'B', false},
                        {"二", 'C', false}};
  variant.reconstruction = "hanal";
  variant.words = {ParseIpa("hanal")};
  variant.convention = "ipa";
  variant.morphemes = {{0, 4, "hanal"}};
  corpus.push_back(variant);
  auto findings = ConsistencyCheck(TestEngine(), corpus);
  bool flagged = false;
  for (const auto& f : findings)
    if (f.code == "inconsistent-morpheme" && f.morpheme == "hanal")
      flagged = true;
  EXPECT_TRUE(flagged);
}

TEST(Consistency, SingleEntryNoFindings) {
  std::vector<CorpusEntry> one = {Attested().ByIndex("K-1")};
  EXPECT_TRUE(ConsistencyCheck(TestEngine(), one).empty());
}

TEST(Validate, UnresolvableCharacterAborts) {
  CorpusEntry entry;
  entry.section = Section::kKO;
  entry.index = "SYN-unknown";
  entry.gloss = "試";
  entry.characters = {{"灶", 'A', false}};
  entry.reconstruction = "ta";
  entry.words = {ParseIpa("ta")};
  entry.convention = "ipa";
  EXPECT_THROW(Validate(TestEngine(), entry, nullptr), LookupError);
}

TEST(Validate, UnalignableEntryAborts) {
  CorpusEntry entry;
  entry.section = Section::kKO;
  entry.index = "SYN-unalignable";
  entry.gloss = "試";
  entry.characters = {{"哈", 'A', false}, {"嫩", 'C', false}};
  entry.reconstruction = "a";
  entry.words = {ParseIpa("a")};
  entry.convention = "ipa";
  EXPECT_THROW(Validate(TestEngine(), entry, nullptr), AlignmentError);
}

TEST(Validate, CandidateSetSoundnessOnWorkedEntries) {
  // Every attested character of the worked entries sits inside the
  // predicted candidate set at its slot: ST characters within the ST
  // candidates, main characters' initial categories within the onset
  // candidates (the zero category for onset-less syllables).
  const Engine& engine = TestEngine();
  const std::set<std::string> worked = {"U-34", "U-703", "T-6",  "P-1622",
                                        "K-1",  "K-2",   "K-4",  "K-10",
                                        "K-13", "K-14"};
  for (const auto& entry : Attested().entries) {
    if (!worked.count(entry.index)) continue;
    SCOPED_TRACE(entry.index);
    EntryClassification cls = ClassifyEntry(engine, entry);
    EntryAlignment alignment = AlignEntry(engine, entry, cls);
    for (const auto& ca : alignment.chars) {
      const CharacterEntry& ce =
          engine.chars.Lookup(entry.characters[ca.char_ordinal].ch);
      const AlignmentUnit& unit = cls.units[ca.unit];
      SCOPED_TRACE(ce.ch);
      if (unit.is_st) {
        bool in_set = false;
        for (const auto& cand : StCharacterCandidates(
                 engine.correspondences, engine.chars,
                 cls.all[unit.st_segment], entry.section))
          in_set = in_set || cand.ch == ce.ch;
        EXPECT_TRUE(in_set);
        continue;
      }
      if (!unit.onset) {
        EXPECT_EQ(ce.shengmu, "yun");
        continue;
      }
      bool in_set = false;
      for (const auto& cand : MtShengmuCandidates(
               engine.correspondences, cls.all[*unit.onset], entry.section))
        in_set = in_set || cand.category == ce.shengmu;
      EXPECT_TRUE(in_set);
    }
  }
}

TEST(Validate, ReportsCarryReliabilityFlags) {
  auto report = Validate(TestEngine(), Attested().ByIndex("K-14"),
                         &AttestedWitnesses());
  EXPECT_EQ(report.rel_onset, "△");
  EXPECT_EQ(report.rel_nucleus, "△");
  EXPECT_EQ(report.rel_coda, "△");
  // The front-vowel rime used in the main layer is recorded as info only.
  EXPECT_TRUE(report.Has("st-only-region-in-main"))
      << RenderValidationReport(report);
  auto uy = Validate(TestEngine(), Attested().ByIndex("U-34"),
                     &AttestedWitnesses());
  EXPECT_EQ(uy.rel_onset, "○");
}

TEST(Validate, SuppliedAlignmentIsHonored) {
  CorpusEntry entry = Attested().ByIndex("K-1");
  entry.alignment =
      std::vector<CharSpan>{{0, 0, 1}, {1, 2, 3}, {2, 4, 4}};
  auto supplied = Validate(TestEngine(), entry, &AttestedWitnesses());
  auto computed = Validate(TestEngine(), Attested().ByIndex("K-1"),
                           &AttestedWitnesses());
  EXPECT_TRUE(supplied.Conformant()) << RenderValidationReport(supplied);
  ASSERT_EQ(supplied.findings.size(), computed.findings.size());
  for (std::size_t i = 0; i < supplied.findings.size(); ++i)
    EXPECT_EQ(supplied.findings[i].code, computed.findings[i].code);
}

TEST(Validate, SuppliedAlignmentMustTileTheParse) {
  CorpusEntry entry = Attested().ByIndex("K-1");
  // A span covering only the onset of a syllable fits no unit.
  entry.alignment =
      std::vector<CharSpan>{{0, 0, 0}, {1, 1, 3}, {2, 4, 4}};
  EXPECT_THROW(Validate(TestEngine(), entry, &AttestedWitnesses()),
               AlignmentError);
}

TEST(Validate, InProgressStageStaysErrorFree) {
  EngineOptions opt;
  opt.apply_in_progress = true;
  Engine engine = Engine::Load("", opt);
  auto corpus = LoadCorpus(engine.data_dir + "/corpora/attested.tsv",
                           engine.conventions);
  WitnessIndex witnesses = BuildWitnessIndex(engine, corpus);
  for (const auto& entry : corpus) {
    auto report = Validate(engine, entry, &witnesses);
    EXPECT_TRUE(report.Conformant())
        << entry.index << "\n" << RenderValidationReport(report);
  }
}

TEST(Predict, ByteIdenticalAcrossRuns) {
  const CorpusEntry& entry = Attested().ByIndex("U-34");
  auto p1 = Predict(TestEngine(), entry.words, entry.section);
  auto p2 = Predict(TestEngine(), entry.words, entry.section);
  EXPECT_EQ(PredictionJson(TestEngine(), entry.words, p1).dump(),
            PredictionJson(TestEngine(), entry.words, p2).dump());
}

}  // namespace
}  // namespace hhy
