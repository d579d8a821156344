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
// Legacy-romanization conversion. Each convention is a table of source
// symbols (possibly digraphs) mapped to IPA output, mirrored from the
// source study's conversion table plus identity rows for the plain letters
// a section's romanization uses. Symbols outside the table are errors.

#ifndef HHY_ROMANIZE_HPP_
#define HHY_ROMANIZE_HPP_

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hhy/errors.hpp"
#include "hhy/ipa.hpp"
#include "hhy/tsv.hpp"
#include "hhy/utf8.hpp"

namespace hhy {

struct MappingRow {
  std::string source;  // romanization symbol, maybe a digraph
  std::string target;  // IPA string appended to the output, or "ː"
  std::string note;    // free text; a leading "voicing" or "place" token
                       // marks the mapping as ambiguous in that feature
  std::string ambiguity;  // "", "voicing" or "place", parsed from the note
};

struct RomanizationConvention {
  std::string name;
  std::vector<MappingRow> rows;  // kept in file order
  // Longest source symbol, in code points, for the matcher.
  std::size_t max_len = 0;
};

inline RomanizationConvention LoadConvention(const std::string& path,
                                             const std::string& name) {
  RomanizationConvention conv;
  conv.name = name;
  for (const auto& row : ReadTsv(path, 2)) {
    MappingRow m;
    m.source = row.fields[0];
    m.target = row.fields[1];
    if (row.fields.size() > 2) m.note = row.fields[2];
    for (const char* marker : {"voicing", "place"}) {
      if (m.note.rfind(marker, 0) == 0) m.ambiguity = marker;
    }
    if (m.source.empty())
      throw LoadError(path, row.line, "empty source symbol");
    conv.max_len = std::max(conv.max_len, Utf8Length(m.source));
    conv.rows.push_back(std::move(m));
  }
  return conv;
}

inline const RomanizationConvention& IpaPassthrough() {
  static const RomanizationConvention conv = [] {
    RomanizationConvention c;
    c.name = "ipa";
    return c;
  }();
  return conv;
}

// Converts one word. Longest-match over the convention's source symbols;
// output equals ParseIpa of the converted string, with ambiguous rows
// yielding underspecified segments.
inline Word ConvertRomanization(std::string_view text,
                                const RomanizationConvention& conv) {
  if (conv.name == "ipa") return ParseIpa(text);
  const CodePoints cps = Utf8Decode(text);
  const std::size_t n = cps.cps.size();
  Word out;
  std::size_t i = 0;
  while (i < n) {
    const MappingRow* hit = nullptr;
    std::size_t hit_len = 0;
    for (const auto& row : conv.rows) {
      const std::size_t len = Utf8Length(row.source);
      if (len <= hit_len || i + len > n) continue;
      std::string window;
      for (std::size_t k = 0; k < len; ++k)
        window += Utf8Encode(cps.cps[i + k]);
      if (window == row.source) {
        hit = &row;
        hit_len = len;
      }
    }
    if (!hit) throw ConversionError(Utf8Encode(cps.cps[i]), conv.name);
    if (hit->target == "ː") {  // source length mark
      if (out.empty())
        throw ConversionError(hit->source + " (length mark with no base)",
                              conv.name);
      out.back().is_long = true;
    } else {
      Word seg = ParseIpa(hit->target);
      if (!hit->ambiguity.empty()) {
        for (auto& s : seg) {
          if (hit->ambiguity == "voicing") s.underspecified |= kFeatVoicing;
          if (hit->ambiguity == "place") s.underspecified |= kFeatPlace;
        }
      }
      out.insert(out.end(), seg.begin(), seg.end());
    }
    i += hit_len;
  }
  return out;
}

}  // namespace hhy

#endif  // HHY_ROMANIZE_HPP_
