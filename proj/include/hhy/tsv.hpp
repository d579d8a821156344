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
// Tab-separated data reading. Every seed table and corpus in this project is
// UTF-8 TSV with '#' comment lines.

#ifndef HHY_TSV_HPP_
#define HHY_TSV_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hhy/errors.hpp"

namespace hhy {

struct TsvRow {
  std::vector<std::string> fields;
  int line = 0;
};

inline std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

inline std::vector<std::string> SplitOn(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Reads all data rows. Blank lines and lines starting with '#' are skipped.
// min_fields=0 disables the width check.
inline std::vector<TsvRow> ReadTsv(const std::string& path,
                                   std::size_t min_fields = 0) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path, 0, "cannot open file");
  std::vector<TsvRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    TsvRow row;
    row.fields = SplitTabs(line);
    row.line = lineno;
    if (min_fields && row.fields.size() < min_fields) {
      throw LoadError(path, lineno,
                      "expected at least " + std::to_string(min_fields) +
                          " tab-separated fields, got " +
                          std::to_string(row.fields.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hhy

#endif  // HHY_TSV_HPP_
