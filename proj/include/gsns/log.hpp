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

// CSV rendering of simulation logs.
//
// Columns: t, q_1..q_n, qd_1..qd_n, ee_<axis>..., err_<axis>..., s_star,
// status, sat_tags, then cp_<id>_<axis> for every constraint axis, then
// cpd_<id>_<axis> in the same order. That is 1 + 2n + 2m + 3 + 2*sum(d_i)
// columns for n joints, m task axes and constraints of dimension d_i.

#ifndef GSNS_LOG_HPP_
#define GSNS_LOG_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "gsns/scenario.hpp"
#include "gsns/simulation.hpp"

namespace gsns {

std::vector<std::string> logHeader(const Scenario& scenario);

/// Shortest round-trippable-to-1e-9 rendering (10 significant digits).
std::string formatNumber(double value);

void writeLog(const Scenario& scenario, const std::vector<TickLog>& log, std::ostream& out);
/// Throws std::ios_base::failure when the file cannot be written.
void writeLogFile(const Scenario& scenario, const std::vector<TickLog>& log, const std::string& path);

/// A parsed CSV log: header plus raw cells, one row per tick.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a column by name; throws std::out_of_range when absent.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

CsvTable readCsv(std::istream& in);

}  // namespace gsns

#endif  // GSNS_LOG_HPP_
