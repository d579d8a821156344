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

#include <string>

#include "hhy/romanize.hpp"

namespace hhy {
namespace {

std::string DataDir() { return HHY_DEFAULT_DATA_DIR; }

RomanizationConvention Load(const std::string& name) {
  return LoadConvention(DataDir() + "/conventions/" + name + ".tsv", name);
}

TEST(ConvertRomanization, UyghurKok) {
  Word w = ConvertRomanization("kök", Load("uyghur"));
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].symbol, "k");
  EXPECT_EQ(w[1].symbol, "ø");
  EXPECT_TRUE(w[1].rounded);
  EXPECT_EQ(w[2].symbol, "k");
}

TEST(ConvertRomanization, MalaySchwa) {
  Word w = ConvertRomanization("ě", Load("malay"));
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].symbol, "ə");
}

TEST(ConvertRomanization, AmbiguousRowsUnderspecify) {
  Word w = ConvertRomanization("ra", Load("uyghur"));
  ASSERT_EQ(w.size(), 2u);
  EXPECT_TRUE(w[0].IsOpen(kFeatVoicing));
  EXPECT_TRUE(w[1].IsOpen(kFeatVoicing));
  // Either voicing reading matches the underspecified segment.
  EXPECT_TRUE(FeaturesMatch(w[0], ParseIpa("r")[0]));
  EXPECT_TRUE(FeaturesMatch(w[0], ParseIpa("r̥")[0]));
}

TEST(ConvertRomanization, DualReadingRowUnderspecifiesPlace) {
  Word w = ConvertRomanization("ǰan", Load("persian"));
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].manner, Manner::kAffricate);
  EXPECT_TRUE(w[0].IsOpen(kFeatPlace));
  EXPECT_TRUE(FeaturesMatch(w[0], ParseIpa("dz")[0]));
  EXPECT_TRUE(FeaturesMatch(w[0], ParseIpa("dʒ")[0]));
}

TEST(ConvertRomanization, DigraphsMatchLongest) {
  Word cham = ConvertRomanization("bai", Load("cham"));
  ASSERT_EQ(cham.size(), 2u);
  EXPECT_EQ(cham[1].symbol, "ɛ");
  Word malay = ConvertRomanization("bang", Load("malay"));
  ASSERT_EQ(malay.size(), 3u);
  EXPECT_EQ(malay[2].symbol, "ŋ");
}

TEST(ConvertRomanization, SourceLengthMark) {
  Word w = ConvertRomanization("ba-d", Load("persian"));
  ASSERT_EQ(w.size(), 3u);
  EXPECT_TRUE(w[1].is_long);
}

TEST(ConvertRomanization, UnmappedSymbolIsAnError) {
  try {
    ConvertRomanization("küç", Load("malay"));
    FAIL() << "expected a conversion error";
  } catch (const ConversionError& e) {
    EXPECT_EQ(e.symbol(), "ü");
  }
}

TEST(ConvertRomanization, PassthroughEqualsParse) {
  const char* words[] = {"prin", "kɤl", "tʃap", "haːnal", "ŋuɔn", "pjəl"};
  for (const char* w : words) {
    SCOPED_TRACE(w);
    EXPECT_EQ(ConvertRomanization(w, IpaPassthrough()), ParseIpa(w));
  }
}

}  // namespace
}  // namespace hhy
