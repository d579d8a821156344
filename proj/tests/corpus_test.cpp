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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "hhy/analyze.hpp"
#include "hhy/report.hpp"

namespace hhy {
namespace {

const Engine& TestEngine() {
  static const Engine engine = Engine::Load();
  return engine;
}

const std::vector<CorpusEntry>& Reference() {
  static const std::vector<CorpusEntry> corpus = LoadCorpus(
      TestEngine().data_dir + "/corpora/reference.tsv",
      TestEngine().conventions);
  return corpus;
}

std::string WriteTemp(const std::string& name, const std::string& body) {
  std::string path = testing::TempDir() + "/" + name;
  std::ofstream out(path, std::ios::binary);
  out << body;
  return path;
}

TEST(LoadCorpus, ParsesWorkedEntryRow) {
  std::string path = WriteTemp(
      "row.tsv", "UY\tU-34\t雲起\t課 克 科 卜\tkök qop\tuyghur\n");
  auto corpus = LoadCorpus(path, TestEngine().conventions);
  ASSERT_EQ(corpus.size(), 1u);
  const CorpusEntry& e = corpus[0];
  EXPECT_EQ(e.section, Section::kUY);
  EXPECT_EQ(e.index, "U-34");
  ASSERT_EQ(e.characters.size(), 4u);
  EXPECT_EQ(e.characters[0].position_tag, 'A');
  EXPECT_EQ(e.characters[1].position_tag, 'B');
  EXPECT_EQ(e.characters[2].position_tag, 'B');
  EXPECT_EQ(e.characters[3].position_tag, 'C');
  ASSERT_EQ(e.words.size(), 2u);
  EXPECT_EQ(Render(e.words[0]), "køk");
  std::remove(path.c_str());
}

TEST(LoadCorpus, BracketedSubstituteForm) {
  std::string path =
      WriteTemp("bracket.tsv", "KO\tK-9\t試\t[哈] 嫩\thana\tipa\n");
  auto corpus = LoadCorpus(path, TestEngine().conventions);
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_TRUE(corpus[0].characters[0].bracketed);
  EXPECT_EQ(corpus[0].characters[0].ch, "哈");
  // Resolves like the base character.
  EXPECT_EQ(&TestEngine().chars.Lookup("[哈]"),
            &TestEngine().chars.Lookup("哈"));
  std::remove(path.c_str());
}

TEST(LoadCorpus, EmptyFileIsEmptyCorpus) {
  std::string path = WriteTemp("empty.tsv", "# nothing here\n");
  EXPECT_TRUE(LoadCorpus(path, TestEngine().conventions).empty());
  std::remove(path.c_str());
}

TEST(LoadCorpus, MalformedRowNamesLine) {
  std::string path = WriteTemp("bad.tsv", "UY\tU-1\t雲\n");
  try {
    LoadCorpus(path, TestEngine().conventions);
    FAIL() << "expected a load error";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 1);
  }
  std::remove(path.c_str());
}

TEST(LoadCorpus, UnknownSectionRejected) {
  std::string path = WriteTemp("sec.tsv", "XX\tX-1\t雲\t哈\tha\tipa\n");
  EXPECT_THROW(LoadCorpus(path, TestEngine().conventions), LoadError);
  std::remove(path.c_str());
}

TEST(LoadCorpus, UnknownConventionRejected) {
  std::string path = WriteTemp("conv.tsv", "UY\tU-1\t雲\t哈\tha\tnope\n");
  EXPECT_THROW(LoadCorpus(path, TestEngine().conventions), LoadError);
  std::remove(path.c_str());
}

TEST(SaveCorpus, RoundTripIsIdentity) {
  const auto& corpus = Reference();
  std::string path = testing::TempDir() + "/roundtrip.tsv";
  SaveCorpus(corpus, path);
  auto back = LoadCorpus(path, TestEngine().conventions);
  ASSERT_EQ(back.size(), corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_EQ(FormatEntry(back[i]), FormatEntry(corpus[i]));
    EXPECT_EQ(back[i].words.size(), corpus[i].words.size());
  }
  // A second save is byte-identical.
  std::string path2 = testing::TempDir() + "/roundtrip2.tsv";
  SaveCorpus(back, path2);
  std::ifstream a(path), b(path2);
  std::string sa((std::istreambuf_iterator<char>(a)),
                 std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)),
                 std::istreambuf_iterator<char>());
  EXPECT_EQ(sa, sb);
  std::remove(path.c_str());
  std::remove(path2.c_str());
}

TEST(Alignment, StCoversExactlyOneStCandidate) {
  // Coverage invariant over a sample of the reference corpus.
  const auto& corpus = Reference();
  int checked = 0;
  for (std::size_t i = 0; i < corpus.size(); i += 17) {
    const CorpusEntry& entry = corpus[i];
    if (entry.unverified) continue;
    EntryClassification cls = ClassifyEntry(TestEngine(), entry);
    EntryAlignment alignment = AlignEntry(TestEngine(), entry, cls);
    for (const auto& ca : alignment.chars) {
      const AlignmentUnit& unit = cls.units[ca.unit];
      if (unit.is_st) {
        EXPECT_EQ(ca.begin, ca.end);
        EXPECT_EQ(cls.slots[unit.st_segment].role,
                  StructuralRole::kStCandidate);
      } else {
        EXPECT_TRUE(cls.all[unit.nucleus].IsVowel());
      }
    }
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Alignment, RandomEntriesAlignOrThrow) {
  // Random words against random character sequences: the aligner either
  // produces ordered, non-overlapping spans or reports an alignment error.
  std::mt19937 rng(99);
  std::vector<std::string> chars;
  for (const auto& [ch, e] : TestEngine().chars.entries) chars.push_back(ch);
  const std::string vowels = "aiueo";
  const std::string consonants = "ptkbdgmnszlrfh";
  for (int round = 0; round < 400; ++round) {
    std::string word;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      if (rng() % 2) word += vowels[rng() % vowels.size()];
      else word += consonants[rng() % consonants.size()];
    }
    CorpusEntry entry;
    entry.section = Section::kFA;
    entry.index = "FZ-" + std::to_string(round);
    entry.gloss = "試";
    entry.reconstruction = word;
    entry.convention = "ipa";
    try {
      entry.words = {ParseIpa(word)};
    } catch (const IpaParseError&) {
      continue;
    }
    const int nchars = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < nchars; ++i)
      entry.characters.push_back({chars[rng() % chars.size()], 'B', false});
    try {
      EntryClassification cls = ClassifyEntry(TestEngine(), entry);
      EntryAlignment alignment = AlignEntry(TestEngine(), entry, cls);
      int prev_end = -1;
      for (const auto& ca : alignment.chars) {
        EXPECT_GT(ca.begin, prev_end);
        EXPECT_LE(ca.begin, ca.end);
        prev_end = ca.end;
      }
    } catch (const NoNucleusError&) {
    } catch (const AlignmentError&) {
    }
  }
}

TEST(FrequencyTables, ArithmeticHoldsPerSection) {
  FrequencyTable table = FrequencyTables(TestEngine(), Reference(),
                                         {"a-e", {"/a/", "/ə/"}});
  for (const auto& [sec, col] : table.sections) {
    int sum = 0;
    for (const auto& [v, n] : col.values) sum += n;
    EXPECT_EQ(sum, col.Total() - col.st - col.unresolved) << ToString(sec);
  }
}

TEST(FrequencyTables, UnresolvedBucketsUnverifiedEntries) {
  // The unverifiable entries carry ST-device characters; the axis whose
  // labels none of them have shows no unresolved noise.
  std::vector<CorpusEntry> sub;
  for (const auto& e : Reference())
    if (e.unverified) sub.push_back(e);
  ASSERT_FALSE(sub.empty());
  FrequencyTable table =
      FrequencyTables(TestEngine(), sub, {"a-e", {"/a/", "/ə/"}});
  // 勒 and 里 carry rime data on this axis; they land in unresolved.
  EXPECT_GT(table.sections.at(Section::kMN).unresolved, 0);
  EXPECT_EQ(table.sections.at(Section::kMN).MtTotal(), 0);
}

TEST(FrequencyTables, EmptyCorpusEmptyTable) {
  FrequencyTable table =
      FrequencyTables(TestEngine(), {}, {"a-e", {"/a/", "/ə/"}});
  EXPECT_TRUE(table.sections.empty());
}

TEST(IdentifyStChars, WorkedExamples) {
  auto reports = IdentifyStChars(TestEngine(), Reference());
  auto find = [&](const char* ch) -> const StCharacterReport& {
    for (const auto& r : reports)
      if (r.ch == ch) return r;
    throw std::runtime_error(std::string("no report for ") + ch);
  };
  const StCharacterReport& ge = find("革");
  EXPECT_EQ(ge.counts.at(Section::kFA), 27);
  EXPECT_EQ(ge.counts.at(Section::kUY), 1);
  EXPECT_EQ(ge.total, 28);
  EXPECT_EQ(ge.decision, "established");
  EXPECT_EQ(ge.criterion, "multi-section");

  const StCharacterReport& xi = find("西");
  EXPECT_EQ(xi.total, 3);
  EXPECT_EQ(xi.lexemes, 1);
  EXPECT_EQ(xi.decision, "rejected");

  const StCharacterReport& pi = find("批");
  EXPECT_EQ(pi.total, 1);
  EXPECT_EQ(pi.decision, "undetermined");

  const StCharacterReport& ha = find("蛤");
  EXPECT_EQ(ha.total, 0);
  EXPECT_EQ(ha.decision, "rejected");
  EXPECT_TRUE(ha.unverified_sections.count(Section::kMN));
}

TEST(IdentifyStChars, OrderInvariantUnderPermutation) {
  auto reports = IdentifyStChars(TestEngine(), Reference());
  std::vector<CorpusEntry> shuffled = Reference();
  std::mt19937 rng(7);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  auto reports2 = IdentifyStChars(TestEngine(), shuffled);
  ASSERT_EQ(reports.size(), reports2.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(reports[i].ch, reports2[i].ch);
    EXPECT_EQ(reports[i].decision, reports2[i].decision);
    EXPECT_EQ(reports[i].total, reports2[i].total);
  }
}

TEST(IdentifyStChars, ParallelMatchesSerial) {
  auto serial = IdentifyStChars(TestEngine(), Reference(), 1);
  auto parallel = IdentifyStChars(TestEngine(), Reference(), 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].ch, parallel[i].ch);
    EXPECT_EQ(serial[i].decision, parallel[i].decision);
  }
}

TEST(Consistency, DeclarativeEndingGroup) {
  // The declarative ending is annotated on 88 entries and carried by one
  // character throughout; the group reports no divergence.
  int with_ta = 0;
  for (const auto& e : Reference())
    for (const auto& m : e.morphemes)
      if (m.label == "ta") ++with_ta;
  EXPECT_EQ(with_ta, 88);
  auto findings = ConsistencyCheck(TestEngine(), Reference());
  for (const auto& f : findings)
    if (f.code == "inconsistent-morpheme") {
      EXPECT_NE(f.morpheme, "ta");
    }
}

TEST(LoadCorpus, VietnameseSectionLoads) {
  std::string path = WriteTemp("vn.tsv", "VN\tV-1\t天\t哈\tha\tipa\n");
  auto corpus = LoadCorpus(path, TestEngine().conventions);
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus[0].section, Section::kVN);
  std::remove(path.c_str());
}

TEST(ExportReport, StTableShape) {
  auto reports = IdentifyStChars(TestEngine(), Reference());
  std::string table = RenderStReports(TestEngine(), reports);
  // Header plus one row per report; the unverifiable marker is printed.
  EXPECT_NE(table.find("char\tcategory"), std::string::npos);
  EXPECT_NE(table.find("⊙"), std::string::npos);
  EXPECT_NE(table.find("decision"), std::string::npos);
  std::size_t lines = std::count(table.begin(), table.end(), '\n');
  EXPECT_EQ(lines, reports.size() + 1);
  // Byte-stable across calls.
  EXPECT_EQ(table, RenderStReports(TestEngine(), reports));
}

TEST(ExportReport, FrequencyTableShape) {
  FrequencyTable table = FrequencyTables(TestEngine(), Reference(),
                                         {"a-e", {"/a/", "/ə/"}});
  std::string text = RenderFrequencyTable(table, 2);
  EXPECT_NE(text.find("section"), std::string::npos);
  EXPECT_NE(text.find("total"), std::string::npos);
  EXPECT_EQ(text, RenderFrequencyTable(table, 2));
}

TEST(ExportReport, EmptyReportsHeaderOnly) {
  std::string table = RenderStReports(TestEngine(), {});
  std::size_t lines = std::count(table.begin(), table.end(), '\n');
  EXPECT_EQ(lines, 1u);
}

}  // namespace
}  // namespace hhy
