// Copyright 2026 The gsns Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Flat "key = value" documents with optional [section] headers and '#'
// comments. Used by scenario files and single-tick instance files.

#ifndef GSNS_DOCUMENT_HPP_
#define GSNS_DOCUMENT_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gsns {

/// Parse or validation failure anchored to a line of the source document.
class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& source, int line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
        line_(line),
        message_(message) {}
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  std::string message_;
};

struct DocumentEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct DocumentSection {
  std::string name;  // empty for the leading, header-less section
  int line = 0;
  std::vector<DocumentEntry> entries;

  const DocumentEntry* find(std::string_view key) const;
};

struct Document {
  std::string source;
  std::vector<DocumentSection> sections;  // sections[0] is the header-less one

  [[noreturn]] void fail(int line, const std::string& message) const {
    throw DocumentError(source, line, message);
  }
};

Document parseDocument(std::string_view text, std::string source = "<input>");

/// Whitespace-separated reals; accepts inf/-inf.
std::vector<double> parseNumbers(const Document& doc, const DocumentEntry& entry);
double parseNumber(const Document& doc, const DocumentEntry& entry);
bool parseBool(const Document& doc, const DocumentEntry& entry);
/// Rows separated by ';', entries by whitespace.
Eigen::MatrixXd parseMatrix(const Document& doc, const DocumentEntry& entry);

}  // namespace gsns

#endif  // GSNS_DOCUMENT_HPP_
