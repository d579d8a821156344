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

#ifndef HHY_ERRORS_HPP_
#define HHY_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hhy {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Seed/corpus file problems; always carries file and line.
class LoadError : public Error {
 public:
  LoadError(const std::string& file, int line, const std::string& msg)
      : Error(file + ":" + std::to_string(line) + ": " + msg),
        file_(file),
        line_(line) {}
  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

class IpaParseError : public Error {
 public:
  IpaParseError(std::size_t byte_offset, const std::string& msg)
      : Error("byte " + std::to_string(byte_offset) + ": " + msg),
        offset_(byte_offset) {}
  std::size_t byte_offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ConversionError : public Error {
 public:
  ConversionError(const std::string& symbol, const std::string& convention)
      : Error("symbol '" + symbol + "' not covered by convention '" +
              convention + "'"),
        symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class LookupError : public Error {
 public:
  explicit LookupError(const std::string& what) : Error(what) {}
};

class NoNucleusError : public Error {
 public:
  NoNucleusError() : Error("word contains no vowel; nothing can be a nucleus") {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

class OutputError : public Error {
 public:
  using Error::Error;
};

}  // namespace hhy

#endif  // HHY_ERRORS_HPP_
