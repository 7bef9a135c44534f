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

#include "gsns/document.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace gsns {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool isIdentifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::optional<double> toNumber(std::string_view token) {
  if (token == "inf" || token == "+inf") return std::numeric_limits<double>::infinity();
  if (token == "-inf") return -std::numeric_limits<double>::infinity();
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

const DocumentEntry* DocumentSection::find(std::string_view key) const {
  const DocumentEntry* found = nullptr;
  for (const auto& e : entries) {
    if (e.key == key) found = &e;
  }
  return found;
}

Document parseDocument(std::string_view text, std::string source) {
  Document doc;
  doc.source = std::move(source);
  doc.sections.push_back(DocumentSection{"", 1, {}});
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') doc.fail(line_no, "unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!isIdentifier(name)) doc.fail(line_no, "invalid section name '" + std::string(name) + "'");
      doc.sections.push_back(DocumentSection{std::string(name), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) doc.fail(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!isIdentifier(key)) doc.fail(line_no, "invalid key '" + std::string(key) + "'");
    if (value.empty()) doc.fail(line_no, "missing value for '" + std::string(key) + "'");
    doc.sections.back().entries.push_back(DocumentEntry{std::string(key), std::string(value), line_no});
  }
  return doc;
}

std::vector<double> parseNumbers(const Document& doc, const DocumentEntry& entry) {
  std::vector<double> out;
  std::istringstream in(entry.value);
  std::string token;
  while (in >> token) {
    const auto value = toNumber(token);
    if (!value) doc.fail(entry.line, "'" + entry.key + "': not a number: '" + token + "'");
    out.push_back(*value);
  }
  return out;
}

double parseNumber(const Document& doc, const DocumentEntry& entry) {
  const auto values = parseNumbers(doc, entry);
  if (values.size() != 1) doc.fail(entry.line, "'" + entry.key + "': expected a single number");
  return values.front();
}

bool parseBool(const Document& doc, const DocumentEntry& entry) {
  const std::string& v = entry.value;
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  doc.fail(entry.line, "'" + entry.key + "': expected true or false");
}

Eigen::MatrixXd parseMatrix(const Document& doc, const DocumentEntry& entry) {
  std::vector<std::vector<double>> rows;
  std::string_view rest = entry.value;
  while (true) {
    const auto semi = rest.find(';');
    DocumentEntry row_entry{entry.key, std::string(trim(rest.substr(0, semi))), entry.line};
    rows.push_back(parseNumbers(doc, row_entry));
    if (semi == std::string_view::npos) break;
    rest = rest.substr(semi + 1);
  }
  const std::size_t cols = rows.front().size();
  if (cols == 0) doc.fail(entry.line, "'" + entry.key + "': empty matrix row");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) doc.fail(entry.line, "'" + entry.key + "': ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

}  // namespace gsns
