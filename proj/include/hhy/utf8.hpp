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
// Minimal UTF-8 decoding, enough for code-point-level work on IPA strings
// and CJK transcription characters. Invalid sequences decode to U+FFFD.

#ifndef HHY_UTF8_HPP_
#define HHY_UTF8_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hhy {

// Decodes the code point starting at byte offset i and advances i past it.
inline char32_t Utf8Next(std::string_view s, std::size_t* i) {
  const auto b0 = static_cast<unsigned char>(s[*i]);
  std::size_t len = 1;
  char32_t cp = b0;
  if (b0 >= 0xF0) {
    len = 4;
    cp = b0 & 0x07u;
  } else if (b0 >= 0xE0) {
    len = 3;
    cp = b0 & 0x0Fu;
  } else if (b0 >= 0xC0) {
    len = 2;
    cp = b0 & 0x1Fu;
  } else if (b0 >= 0x80) {
    ++*i;
    return 0xFFFD;
  }
  if (*i + len > s.size()) {
    *i = s.size();
    return 0xFFFD;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[*i + k]);
    if ((b & 0xC0u) != 0x80u) {
      ++*i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3Fu);
  }
  *i += len;
  return cp;
}

inline std::string Utf8Encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

// Code points plus the byte offset each one starts at.
struct CodePoints {
  std::vector<char32_t> cps;
  std::vector<std::size_t> offsets;
};

inline CodePoints Utf8Decode(std::string_view s) {
  CodePoints out;
  std::size_t i = 0;
  while (i < s.size()) {
    out.offsets.push_back(i);
    out.cps.push_back(Utf8Next(s, &i));
  }
  return out;
}

inline std::size_t Utf8Length(std::string_view s) {
  std::size_t i = 0, n = 0;
  while (i < s.size()) {
    Utf8Next(s, &i);
    ++n;
  }
  return n;
}

}  // namespace hhy

#endif  // HHY_UTF8_HPP_
