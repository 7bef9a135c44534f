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

#include "gsns/log.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace gsns {
namespace {

constexpr int kSignificantDigits = 10;

void appendVector(std::string& line, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    line += ',';
    line += formatNumber(v(i));
  }
}

std::vector<std::string> splitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::string formatNumber(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, kSignificantDigits);
  return std::string(buffer, result.ptr);
}

std::vector<std::string> logHeader(const Scenario& scenario) {
  std::vector<std::string> header{"t"};
  const Eigen::Index n = scenario.robot.jointCount();
  for (Eigen::Index j = 1; j <= n; ++j) header.push_back("q_" + std::to_string(j));
  for (Eigen::Index j = 1; j <= n; ++j) header.push_back("qd_" + std::to_string(j));
  const std::string axes = scenario.task_axes.str();
  for (char a : axes) header.push_back(std::string("ee_") + a);
  for (char a : axes) header.push_back(std::string("err_") + a);
  header.insert(header.end(), {"s_star", "status", "sat_tags"});
  for (const char* prefix : {"cp_", "cpd_"}) {
    for (const auto& c : scenario.constraints) {
      for (char a : c.axes.str()) header.push_back(prefix + c.id + "_" + a);
    }
  }
  return header;
}

void writeLog(const Scenario& scenario, const std::vector<TickLog>& log, std::ostream& out) {
  const auto header = logHeader(scenario);
  std::string line;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) line += ',';
    line += header[i];
  }
  out << line << '\n';
  for (const TickLog& rec : log) {
    line = formatNumber(rec.t);
    appendVector(line, rec.q);
    appendVector(line, rec.q_dot);
    appendVector(line, rec.ee_pos);
    appendVector(line, rec.ee_err);
    line += ',';
    line += formatNumber(rec.s_star);
    line += ',';
    line += toString(rec.status);
    line += ',';
    for (std::size_t i = 0; i < rec.saturated.size(); ++i) {
      if (i > 0) line += ';';
      line += rec.saturated[i];
    }
    appendVector(line, rec.cp_pos);
    appendVector(line, rec.cp_vel);
    out << line << '\n';
  }
  if (!out) throw std::ios_base::failure("writeLog: stream error");
}

void writeLogFile(const Scenario& scenario, const std::vector<TickLog>& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  writeLog(scenario, log, out);
  out.close();
  if (!out) throw std::ios_base::failure("error writing '" + path + "'");
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("CsvTable: no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const std::string& cell = rows.at(row).at(column(name));
  double value = 0;
  const auto result = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (result.ec != std::errc() || result.ptr != cell.data() + cell.size()) {
    throw std::invalid_argument("CsvTable: '" + cell + "' is not a number");
  }
  return value;
}

CsvTable readCsv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("readCsv: missing header");
  table.header = splitCsvLine(line);
  while (std::getline(in, line)) {
    auto cells = splitCsvLine(line);
    if (cells.size() != table.header.size()) {
      throw std::invalid_argument("readCsv: row " + std::to_string(table.rows.size() + 1) + " has " +
                                  std::to_string(cells.size()) + " cells, header has " +
                                  std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

}  // namespace gsns
