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
// Corpus entries and their file format. One entry per line, tab-separated:
// section code, index, gloss, space-separated character list (substitute
// forms as [X]), reconstruction (words space-separated; "-" marks an entry
// whose full form cannot be verified), romanization convention name,
// optional alignment spans ("0:0-1 1:2-2", end inclusive), optional
// morpheme spans ("0-4:label", end inclusive).

#ifndef HHY_CORPUS_HPP_
#define HHY_CORPUS_HPP_

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhy/correspond.hpp"
#include "hhy/errors.hpp"
#include "hhy/romanize.hpp"
#include "hhy/tsv.hpp"
#include "hhy/utf8.hpp"

namespace hhy {

struct CorpusCharacter {
  std::string ch;          // base character, brackets stripped
  char position_tag = 'A'  /* A initial, B medial, C final */;
  bool bracketed = false;
};

struct CharSpan {
  int char_ordinal = 0;
  int begin = 0;  // global segment index
  int end = 0;    // inclusive
};

struct MorphemeSpan {
  int begin = 0;
  int end = 0;  // inclusive
  std::string label;
};

struct CorpusEntry {
  Section section = Section::kKO;
  std::string index;
  std::string gloss;
  std::vector<CorpusCharacter> characters;
  std::string reconstruction;  // raw text, "-" when unverifiable
  std::vector<Word> words;     // converted reconstruction, one per word
  std::string convention;
  bool unverified = false;
  std::optional<std::vector<CharSpan>> alignment;  // as supplied in the file
  std::vector<MorphemeSpan> morphemes;
  int line = 0;

  Word AllSegments() const {
    Word out;
    for (const auto& w : words) out.insert(out.end(), w.begin(), w.end());
    return out;
  }
};

namespace detail {

inline std::vector<CorpusCharacter> ParseCharacterList(
    const std::string& field, const std::string& path, int line) {
  std::vector<CorpusCharacter> out;
  for (const auto& tok : SplitOn(field, ' ')) {
    CorpusCharacter c;
    std::string body = tok;
    if (body.size() >= 2 && body.front() == '[' && body.back() == ']') {
      c.bracketed = true;
      body = body.substr(1, body.size() - 2);
    }
    if (Utf8Length(body) != 1)
      throw LoadError(path, line,
                      "character token must be one code point: '" + tok + "'");
    c.ch = body;
    out.push_back(std::move(c));
  }
  if (out.empty()) throw LoadError(path, line, "empty character list");
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].position_tag = i == 0 ? 'A' : (i + 1 == out.size() ? 'C' : 'B');
  return out;
}

inline std::vector<CharSpan> ParseAlignment(const std::string& field,
                                            const std::string& path,
                                            int line) {
  std::vector<CharSpan> out;
  for (const auto& tok : SplitOn(field, ' ')) {
    auto colon = tok.find(':');
    auto dash = tok.find('-', colon);
    if (colon == std::string::npos || dash == std::string::npos)
      throw LoadError(path, line, "bad alignment span '" + tok + "'");
    CharSpan s;
    s.char_ordinal = std::stoi(tok.substr(0, colon));
    s.begin = std::stoi(tok.substr(colon + 1, dash - colon - 1));
    s.end = std::stoi(tok.substr(dash + 1));
    if (s.end < s.begin)
      throw LoadError(path, line, "bad alignment span '" + tok + "'");
    out.push_back(s);
  }
  return out;
}

inline std::vector<MorphemeSpan> ParseMorphemes(const std::string& field,
                                                const std::string& path,
                                                int line) {
  std::vector<MorphemeSpan> out;
  for (const auto& tok : SplitOn(field, ' ')) {
    auto dash = tok.find('-');
    if (dash == std::string::npos)
      throw LoadError(path, line, "bad morpheme span '" + tok + "'");
    MorphemeSpan m;
    m.begin = std::stoi(tok.substr(0, dash));
    std::string rest = tok.substr(dash + 1);
    auto colon = rest.find(':');
    if (colon == std::string::npos) {
      m.end = std::stoi(rest);
    } else {
      m.end = std::stoi(rest.substr(0, colon));
      m.label = rest.substr(colon + 1);
    }
    if (m.end < m.begin)
      throw LoadError(path, line, "bad morpheme span '" + tok + "'");
    out.push_back(m);
  }
  return out;
}

}  // namespace detail

inline std::vector<CorpusEntry> LoadCorpus(
    const std::string& path,
    const std::map<std::string, RomanizationConvention>& conventions) {
  std::vector<CorpusEntry> out;
  for (const auto& row : ReadTsv(path, 6)) {
    CorpusEntry e;
    e.line = row.line;
    auto sec = SectionFromString(row.fields[0]);
    if (!sec)
      throw LoadError(path, row.line,
                      "unknown section code '" + row.fields[0] + "'");
    e.section = *sec;
    e.index = row.fields[1];
    e.gloss = row.fields[2];
    e.characters = detail::ParseCharacterList(row.fields[3], path, row.line);
    e.reconstruction = row.fields[4];
    e.convention = row.fields[5];
    if (e.reconstruction == "-") {
      e.unverified = true;
    } else {
      auto conv = conventions.find(e.convention);
      if (conv == conventions.end())
        throw LoadError(path, row.line,
                        "unknown convention '" + e.convention + "'");
      for (const auto& word : SplitOn(e.reconstruction, ' ')) {
        try {
          e.words.push_back(ConvertRomanization(word, conv->second));
        } catch (const Error& err) {
          throw LoadError(path, row.line, err.what());
        }
      }
    }
    if (row.fields.size() > 6 && !row.fields[6].empty() &&
        row.fields[6] != "-")
      e.alignment = detail::ParseAlignment(row.fields[6], path, row.line);
    if (row.fields.size() > 7 && !row.fields[7].empty() &&
        row.fields[7] != "-")
      e.morphemes = detail::ParseMorphemes(row.fields[7], path, row.line);
    if (e.alignment) {
      const int nchars = static_cast<int>(e.characters.size());
      const int nsegs = static_cast<int>(e.AllSegments().size());
      for (const auto& s : *e.alignment) {
        if (s.char_ordinal < 0 || s.char_ordinal >= nchars ||
            s.begin < 0 || s.end >= nsegs)
          throw LoadError(path, row.line, "alignment span out of range");
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::string FormatEntry(const CorpusEntry& e) {
  std::string line = ToString(e.section);
  line += '\t';
  line += e.index + '\t' + e.gloss + '\t';
  for (std::size_t i = 0; i < e.characters.size(); ++i) {
    if (i) line += ' ';
    if (e.characters[i].bracketed) line += '[' + e.characters[i].ch + ']';
    else line += e.characters[i].ch;
  }
  line += '\t' + e.reconstruction + '\t' + e.convention;
  const bool has_morphemes = !e.morphemes.empty();
  if (e.alignment || has_morphemes) {
    line += '\t';
    if (e.alignment) {
      std::string spans;
      for (const auto& s : *e.alignment) {
        if (!spans.empty()) spans += ' ';
        spans += std::to_string(s.char_ordinal) + ':' +
                 std::to_string(s.begin) + '-' + std::to_string(s.end);
      }
      line += spans;
    } else {
      line += '-';
    }
  }
  if (has_morphemes) {
    line += '\t';
    std::string spans;
    for (const auto& m : e.morphemes) {
      if (!spans.empty()) spans += ' ';
      spans += std::to_string(m.begin) + '-' + std::to_string(m.end);
      if (!m.label.empty()) spans += ':' + m.label;
    }
    line += spans;
  }
  return line;
}

inline void SaveCorpus(const std::vector<CorpusEntry>& corpus,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot write " + path);
  for (const auto& e : corpus) out << FormatEntry(e) << '\n';
}

}  // namespace hhy

#endif  // HHY_CORPUS_HPP_
