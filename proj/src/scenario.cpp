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

#include "gsns/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gsns {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Typed access to one section; remembers which keys were consumed so that
// misspelled keys are reported instead of silently ignored.
class SectionReader {
 public:
  SectionReader(const Document& doc, const DocumentSection& section, std::set<std::string> repeatable = {})
      : doc_(doc), section_(section) {
    std::set<std::string> seen;
    for (const auto& e : section.entries) {
      if (!repeatable.count(e.key) && !seen.insert(e.key).second) {
        doc.fail(e.line, "duplicate key '" + e.key + "'" + where());
      }
    }
  }

  std::string where() const { return section_.name.empty() ? std::string() : " in [" + section_.name + "]"; }
  int line() const { return section_.line; }
  [[noreturn]] void fail(int line, const std::string& message) const { doc_.fail(line, message); }

  const DocumentEntry* optional(const std::string& key) {
    used_.insert(key);
    return section_.find(key);
  }

  const DocumentEntry& required(const std::string& key) {
    if (const auto* e = optional(key)) return *e;
    fail(section_.line, "missing required key '" + key + "'" + where());
  }

  std::vector<const DocumentEntry*> all(const std::string& key) {
    used_.insert(key);
    std::vector<const DocumentEntry*> out;
    for (const auto& e : section_.entries) {
      if (e.key == key) out.push_back(&e);
    }
    return out;
  }

  double number(const std::string& key) { return parseNumber(doc_, required(key)); }

  double number(const std::string& key, double fallback) {
    const auto* e = optional(key);
    return e ? parseNumber(doc_, *e) : fallback;
  }

  std::vector<double> numbers(const DocumentEntry& e) const { return parseNumbers(doc_, e); }
  double number(const DocumentEntry& e) const { return parseNumber(doc_, e); }
  bool boolean(const DocumentEntry& e) const { return parseBool(doc_, e); }

  /// Vector of `size` entries; a single value is broadcast.
  /// One value per entry; a single value is repeated when `broadcast` is set.
  Eigen::VectorXd vector(const DocumentEntry& e, Eigen::Index size, double scale = 1.0,
                         bool broadcast = true) const {
    const auto values = parseNumbers(doc_, e);
    if (broadcast && values.size() == 1) return Eigen::VectorXd::Constant(size, values[0] * scale);
    if (static_cast<Eigen::Index>(values.size()) != size) {
      fail(e.line, "'" + e.key + "': expected " + (broadcast ? "1 or " : "") + std::to_string(size) +
                       " values, got " + std::to_string(values.size()));
    }
    return Eigen::Map<const Eigen::VectorXd>(values.data(), size) * scale;
  }

  /// `key` in SI units or `key_deg` in degrees (converted to radians).
  std::pair<Eigen::VectorXd, int> angles(const std::string& key, Eigen::Index size, bool broadcast = true) {
    const auto* rad = optional(key);
    const auto* deg = optional(key + "_deg");
    if (rad && deg) fail(deg->line, "give either '" + key + "' or '" + key + "_deg', not both");
    if (!rad && !deg) fail(section_.line, "missing required key '" + key + "' (or '" + key + "_deg')" + where());
    if (rad) return {vector(*rad, size, 1.0, broadcast), rad->line};
    return {vector(*deg, size, kDegToRad, broadcast), deg->line};
  }

  std::optional<std::pair<double, int>> optionalAngle(const std::string& key) {
    const auto* rad = optional(key);
    const auto* deg = optional(key + "_deg");
    if (rad && deg) fail(deg->line, "give either '" + key + "' or '" + key + "_deg', not both");
    if (rad) return std::pair{parseNumber(doc_, *rad), rad->line};
    if (deg) return std::pair{parseNumber(doc_, *deg) * kDegToRad, deg->line};
    return std::nullopt;
  }

  Eigen::Vector3d point(const std::string& key) {
    const auto& e = required(key);
    const auto values = parseNumbers(doc_, e);
    if (values.size() != 3) fail(e.line, "'" + key + "': expected 3 coordinates");
    return {values[0], values[1], values[2]};
  }

  std::string text(const std::string& key) { return required(key).value; }

  void finish() const {
    for (const auto& e : section_.entries) {
      if (!used_.count(e.key)) fail(e.line, "unknown key '" + e.key + "'" + where());
    }
  }

 private:
  const Document& doc_;
  const DocumentSection& section_;
  std::set<std::string> used_;
};

AxisSelector parseAxes(SectionReader& reader, const std::string& key) {
  const auto& e = reader.required(key);
  try {
    return AxisSelector::parse(e.value);
  } catch (const std::invalid_argument& err) {
    reader.fail(e.line, err.what());
  }
}

RobotModel<double> readRobot(SectionReader& r) {
  const auto& kind = r.required("kind");
  try {
    if (kind.value == "planar") {
      const auto& lengths = r.required("link_lengths");
      return RobotModel<double>::planar(r.numbers(lengths));
    }
    if (kind.value == "dh") {
      std::vector<DhRow<double>> rows;
      const auto rad_rows = r.all("dh_row");
      const auto deg_rows = r.all("dh_row_deg");
      if (!rad_rows.empty() && !deg_rows.empty()) {
        r.fail(deg_rows.front()->line, "mix of 'dh_row' and 'dh_row_deg' entries");
      }
      const bool degrees = !deg_rows.empty();
      for (const auto* e : degrees ? deg_rows : rad_rows) {
        const auto v = r.numbers(*e);
        if (v.size() != 4) r.fail(e->line, "'" + e->key + "': expected a alpha d theta_offset");
        const double angle = degrees ? kDegToRad : 1.0;
        rows.push_back(DhRow<double>{v[0], v[1] * angle, v[2], v[3] * angle});
      }
      if (rows.empty()) r.fail(r.line(), "dh robot needs at least one 'dh_row' or 'dh_row_deg'");
      return RobotModel<double>::denavitHartenberg(std::move(rows));
    }
  } catch (const std::invalid_argument& err) {
    r.fail(kind.line, err.what());
  }
  r.fail(kind.line, "robot kind must be 'planar' or 'dh', got '" + kind.value + "'");
}

CartesianConstraint<double> readConstraint(SectionReader& r, Eigen::Index joints, std::size_t ordinal) {
  CartesianConstraint<double> c;
  const auto* id = r.optional("id");
  c.id = id ? id->value : "cp" + std::to_string(ordinal + 1);
  const auto& frame = r.required("frame");
  const double frame_value = r.number(frame);
  if (frame_value != std::floor(frame_value) || frame_value < 1 || frame_value > static_cast<double>(joints)) {
    r.fail(frame.line, "'frame' must be an integer in [1, " + std::to_string(joints) + "]");
  }
  c.point.frame_index = static_cast<int>(frame_value);
  if (r.optional("offset")) c.point.local_offset = r.point("offset");
  c.axes = parseAxes(r, "axes");
  const Eigen::Index d = c.axes.size();
  const double inf = std::numeric_limits<double>::infinity();
  const auto* p_min = r.optional("p_min");
  const auto* p_max = r.optional("p_max");
  c.p_min = p_min ? r.vector(*p_min, d) : Eigen::VectorXd::Constant(d, -inf);
  c.p_max = p_max ? r.vector(*p_max, d) : Eigen::VectorXd::Constant(d, inf);
  c.v_min = r.vector(r.required("v_min"), d);
  c.v_max = r.vector(r.required("v_max"), d);
  const auto* a_max = r.optional("a_max");
  c.a_max = a_max ? r.vector(*a_max, d) : Eigen::VectorXd::Constant(d, inf);
  if (const auto* window = r.optional("window")) {
    const auto v = r.numbers(*window);
    if (v.size() != 2) r.fail(window->line, "'window': expected start and end times");
    if (!(v[0] <= v[1])) r.fail(window->line, "'window': start after end");
    c.window = TimeWindow<double>{v[0], v[1]};
  }
  if (const auto* coincides = r.optional("coincides_with_task")) {
    c.coincides_with_task = r.boolean(*coincides);
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& err) {
    r.fail(r.line(), err.what());
  }
  return c;
}

}  // namespace

void validateScenario(const Scenario& s) {
  const Eigen::Index n = s.robot.jointCount();
  if (n < 1) throw std::invalid_argument("robot: no joints");
  if (!(s.sample_time > 0)) throw std::invalid_argument("sample_time: must be positive");
  if (!(s.duration > 0)) throw std::invalid_argument("duration: must be positive");
  s.joint_limits.validate(n);
  if (s.initial_q.size() != n) throw std::invalid_argument("initial q: expected " + std::to_string(n) + " values");
  for (Eigen::Index j = 0; j < n; ++j) {
    if (s.initial_q(j) < s.joint_limits.q_min(j) || s.initial_q(j) > s.joint_limits.q_max(j)) {
      throw std::invalid_argument("initial q: joint " + std::to_string(j + 1) + " outside position limits");
    }
  }
  std::set<std::string> ids;
  for (const auto& c : s.constraints) {
    c.validate();
    s.robot.checkPoint(c.point);
    if (!ids.insert(c.id).second) throw std::invalid_argument("constraint id '" + c.id + "' used twice");
  }
  validatePath(s.path);
  validateTiming(s.timing);
  if (s.feedback.k_p.size() != s.task_axes.size() || !(s.feedback.k_p.array() > 0).all()) {
    throw std::invalid_argument("feedback k_p: one positive gain per task axis expected");
  }
  if (!(s.solver.rel_tol > 0) || !(s.solver.epsilon >= 0) || s.solver.iteration_cap_multiplier < 1) {
    throw std::invalid_argument("solver: rel_tol > 0, epsilon >= 0, iteration_cap_multiplier >= 1 required");
  }
}

Scenario loadScenario(std::string_view text, std::string source) {
  const Document doc = parseDocument(text, std::move(source));
  Scenario s;

  std::map<std::string, const DocumentSection*> unique;
  std::vector<const DocumentSection*> constraint_sections;
  const std::set<std::string> known = {"robot", "initial", "task", "feedback", "joint_limits",
                                       "constraint", "path", "timing", "solver"};
  for (std::size_t i = 1; i < doc.sections.size(); ++i) {
    const auto& sec = doc.sections[i];
    if (!known.count(sec.name)) doc.fail(sec.line, "unknown section [" + sec.name + "]");
    if (sec.name == "constraint") {
      constraint_sections.push_back(&sec);
    } else if (!unique.emplace(sec.name, &sec).second) {
      doc.fail(sec.line, "section [" + sec.name + "] given twice");
    }
  }
  auto section = [&](const std::string& name) -> const DocumentSection& {
    const auto it = unique.find(name);
    if (it == unique.end()) doc.fail(1, "missing section [" + name + "]");
    return *it->second;
  };

  SectionReader top(doc, doc.sections[0]);
  const auto* name = top.optional("name");
  s.name = name ? name->value : "scenario";
  const auto& sample_time = top.required("sample_time");
  s.sample_time = parseNumber(doc, sample_time);
  if (!(s.sample_time > 0)) doc.fail(sample_time.line, "'sample_time' must be positive");
  const auto& duration = top.required("duration");
  s.duration = parseNumber(doc, duration);
  if (!(s.duration > 0)) doc.fail(duration.line, "'duration' must be positive");
  top.finish();

  SectionReader robot(doc, section("robot"), {"dh_row", "dh_row_deg"});
  s.robot = readRobot(robot);
  robot.finish();
  const Eigen::Index n = s.robot.jointCount();

  SectionReader limits(doc, section("joint_limits"));
  s.joint_limits.q_min = limits.angles("q_min", n).first;
  s.joint_limits.q_max = limits.angles("q_max", n).first;
  s.joint_limits.v_min = limits.angles("v_min", n).first;
  s.joint_limits.v_max = limits.angles("v_max", n).first;
  if (limits.optional("a_max") || limits.optional("a_max_deg")) {
    s.joint_limits.a_max = limits.angles("a_max", n).first;
  } else {
    s.joint_limits.a_max = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  }
  limits.finish();
  try {
    s.joint_limits.validate(n);
  } catch (const std::invalid_argument& err) {
    doc.fail(limits.line(), err.what());
  }

  SectionReader initial(doc, section("initial"));
  int initial_line = 0;
  std::tie(s.initial_q, initial_line) = initial.angles("q", n, false);
  initial.finish();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (s.initial_q(j) < s.joint_limits.q_min(j) || s.initial_q(j) > s.joint_limits.q_max(j)) {
      doc.fail(initial_line, "initial q: joint " + std::to_string(j + 1) + " outside its position limits");
    }
  }

  SectionReader task(doc, section("task"));
  s.task_axes = parseAxes(task, "axes");
  task.finish();

  SectionReader feedback(doc, section("feedback"));
  const auto& k_p = feedback.required("k_p");
  s.feedback.k_p = feedback.vector(k_p, s.task_axes.size());
  if (!(s.feedback.k_p.array() > 0).all()) doc.fail(k_p.line, "'k_p' gains must be positive");
  feedback.finish();

  for (std::size_t i = 0; i < constraint_sections.size(); ++i) {
    SectionReader reader(doc, *constraint_sections[i]);
    s.constraints.push_back(readConstraint(reader, n, i));
    reader.finish();
    for (std::size_t j = 0; j < i; ++j) {
      if (s.constraints[j].id == s.constraints[i].id) {
        doc.fail(constraint_sections[i]->line, "constraint id '" + s.constraints[i].id + "' used twice");
      }
    }
  }

  SectionReader path(doc, section("path"));
  const auto& path_kind = path.required("kind");
  if (path_kind.value == "line") {
    s.path = LinePath<double>{path.point("start"), path.point("end")};
  } else if (path_kind.value == "circle") {
    CirclePath<double> circle;
    circle.center = path.point("center");
    const auto& radius = path.required("radius");
    circle.radius = parseNumber(doc, radius);
    const auto& plane = path.required("plane");
    AxisSelector axes = parseAxes(path, "plane");
    if (axes.size() != 2) doc.fail(plane.line, "'plane' must name two axes, e.g. xy");
    circle.first_axis = axes[0];
    circle.second_axis = axes[1];
    const double laps = path.number("laps", 1.0);
    if (laps != std::floor(laps) || laps < 1) doc.fail(path.line(), "'laps' must be a positive integer");
    circle.laps = static_cast<int>(laps);
    if (auto angle = path.optionalAngle("start_angle")) circle.start_angle = angle->first;
    s.path = circle;
  } else {
    doc.fail(path_kind.line, "path kind must be 'line' or 'circle', got '" + path_kind.value + "'");
  }
  path.finish();
  try {
    validatePath(s.path);
  } catch (const std::invalid_argument& err) {
    doc.fail(path.line(), err.what());
  }

  SectionReader timing(doc, section("timing"));
  const auto& timing_kind = timing.required("kind");
  const double length = pathLength(s.path);
  if (timing_kind.value == "quintic") {
    s.timing = QuinticTiming<double>{timing.number("duration"), length};
  } else if (timing_kind.value == "trapezoid") {
    s.timing = TrapezoidTiming<double>{timing.number("cruise_velocity"), timing.number("max_accel"), length};
  } else {
    doc.fail(timing_kind.line, "timing kind must be 'quintic' or 'trapezoid', got '" + timing_kind.value + "'");
  }
  timing.finish();
  try {
    validateTiming(s.timing);
  } catch (const std::invalid_argument& err) {
    doc.fail(timing.line(), err.what());
  }

  if (unique.count("solver")) {
    SectionReader solver(doc, section("solver"));
    s.solver.rel_tol = solver.number("rel_tol", s.solver.rel_tol);
    s.solver.epsilon = solver.number("epsilon", s.solver.epsilon);
    const double cap = solver.number("iteration_cap_multiplier", s.solver.iteration_cap_multiplier);
    if (cap != std::floor(cap) || cap < 1) doc.fail(solver.line(), "'iteration_cap_multiplier' must be a positive integer");
    s.solver.iteration_cap_multiplier = static_cast<int>(cap);
    solver.finish();
  }

  try {
    validateScenario(s);
  } catch (const std::invalid_argument& err) {
    doc.fail(1, err.what());
  }
  return s;
}

Scenario loadScenarioFile(const std::string& path) { return loadScenario(readFile(path), path); }

Scenario widenLimits(const Scenario& scenario, double factor) {
  Scenario out = scenario;
  auto& lim = out.joint_limits;
  lim.q_min *= factor;
  lim.q_max *= factor;
  lim.v_min *= factor;
  lim.v_max *= factor;
  lim.a_max *= factor;
  for (auto& c : out.constraints) {
    c.p_min *= factor;
    c.p_max *= factor;
    c.v_min *= factor;
    c.v_max *= factor;
    c.a_max *= factor;
  }
  return out;
}

SingleTickInstance loadInstance(std::string_view text, std::string source) {
  const Document doc = parseDocument(text, std::move(source));
  SingleTickInstance inst;
  SectionReader top(doc, doc.sections[0]);
  const auto& jac = top.required("jacobian");
  inst.task.jacobian = parseMatrix(doc, jac);
  const auto& x_dot = top.required("x_dot");
  inst.task.x_dot = top.vector(x_dot, inst.task.jacobian.rows());
  const auto& a = top.required("a");
  Eigen::MatrixXd a_matrix = parseMatrix(doc, a);
  if (a_matrix.cols() != inst.task.jacobian.cols()) {
    doc.fail(a.line, "'a' must have as many columns as 'jacobian'");
  }
  const Eigen::Index rows = a_matrix.rows();
  Eigen::VectorXd b_min = top.vector(top.required("b_min"), rows);
  Eigen::VectorXd b_max = top.vector(top.required("b_max"), rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!(b_min(i) <= b_max(i))) doc.fail(top.required("b_min").line, "b_min exceeds b_max in row " + std::to_string(i + 1));
  }
  std::vector<bool> coincident;
  if (const auto* flags = top.optional("coincides")) {
    const Eigen::VectorXd v = top.vector(*flags, rows);
    for (Eigen::Index i = 0; i < rows; ++i) coincident.push_back(v(i) != 0.0);
  }
  inst.solver.rel_tol = top.number("rel_tol", inst.solver.rel_tol);
  inst.solver.epsilon = top.number("epsilon", inst.solver.epsilon);
  top.finish();
  if (doc.sections.size() > 1) doc.fail(doc.sections[1].line, "instance documents have no sections");
  inst.system = makeAugmentedSystem<double>(std::move(a_matrix), std::move(b_min), std::move(b_max), coincident);
  return inst;
}

SingleTickInstance loadInstanceFile(const std::string& path) { return loadInstance(readFile(path), path); }

}  // namespace gsns
