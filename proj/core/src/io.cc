// Copyright 2026 The Authors.
//
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

#include "dog/io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <string>

#include "dog/errors.h"

namespace dog {
namespace {

// Splits the stream into whitespace-tokenized lines, dropping comments.
struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> Tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) {
      text.erase(hash);
    }
    std::istringstream words(text);
    Line line{number, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void Fail(const Line& line, const std::string& what) {
  throw InputError("line " + std::to_string(line.number) + ": " + what);
}

template <typename T>
T Parse(const Line& line, const std::string& token) {
  std::istringstream in(token);
  T value{};
  if (!(in >> value) || !in.eof()) Fail(line, "bad value '" + token + "'");
  return value;
}

void Need(const Line& line, std::size_t at_least) {
  if (line.tokens.size() < at_least) {
    Fail(line, "'" + line.tokens[0] + "' needs " +
                   std::to_string(at_least - 1) + " argument(s)");
  }
}

AgentId ParseAgent(const Line& line, const std::string& token, int n) {
  const auto agent = Parse<int>(line, token);
  if (n <= 0) Fail(line, "'agents' must come first");
  if (agent < 0 || agent >= n) Fail(line, "agent " + token + " out of range");
  return agent;
}

}  // namespace

ScenarioFile ParseScenario(std::istream& in) {
  ScenarioFile file;
  for (const Line& line : Tokenize(in)) {
    const std::string& key = line.tokens[0];
    if (key == "agents") {
      Need(line, 2);
      file.num_agents = Parse<int>(line, line.tokens[1]);
      if (file.num_agents < 1) Fail(line, "need at least one agent");
      file.agent_actions.assign(file.num_agents, {});
    } else if (key == "targets") {
      Need(line, 2);
      file.num_targets = Parse<int>(line, line.tokens[1]);
    } else if (key == "action") {
      Need(line, 3);
      if (file.motion) Fail(line, "'action' cannot be mixed with 'motion'");
      const AgentId agent = ParseAgent(line, line.tokens[1], file.num_agents);
      std::vector<int> cover;
      for (std::size_t k = 3; k < line.tokens.size(); ++k) {
        const int target = Parse<int>(line, line.tokens[k]);
        if (target < 0 || target >= file.num_targets) {
          Fail(line, "target " + line.tokens[k] + " outside 'targets'");
        }
        cover.push_back(target);
      }
      file.agent_actions[agent].push_back(
          static_cast<ActionId>(file.action_names.size()));
      file.action_names.push_back(line.tokens[2]);
      file.covers.push_back(std::move(cover));
    } else if (key == "motion") {
      Need(line, 5);
      if (!file.covers.empty()) Fail(line, "'motion' cannot be mixed with 'action'");
      MotionModel model;
      model.width = Parse<int>(line, line.tokens[1]);
      model.height = Parse<int>(line, line.tokens[2]);
      model.num_targets = Parse<int>(line, line.tokens[3]);
      model.seed = Parse<std::uint64_t>(line, line.tokens[4]);
      file.motion = model;
      file.num_targets = model.num_targets;
    } else if (key == "sensor") {
      Need(line, 7);
      if (!file.motion) Fail(line, "'sensor' needs a preceding 'motion'");
      const AgentId agent = ParseAgent(line, line.tokens[1], file.num_agents);
      SensorRegion r{Parse<int>(line, line.tokens[3]),
                     Parse<int>(line, line.tokens[4]),
                     Parse<int>(line, line.tokens[5]),
                     Parse<int>(line, line.tokens[6])};
      if (r.x0 > r.x1 || r.y0 > r.y1) Fail(line, "empty sensor region");
      file.agent_actions[agent].push_back(
          static_cast<ActionId>(file.action_names.size()));
      file.action_names.push_back(line.tokens[2]);
      file.sensors.push_back(r);
    } else if (key == "rmax") {
      Need(line, 2);
      file.r_max = Parse<double>(line, line.tokens[1]);
      if (!(*file.r_max > 0.0)) Fail(line, "rmax must be positive");
    } else if (key == "horizon") {
      Need(line, 2);
      file.horizon = Parse<int>(line, line.tokens[1]);
      if (*file.horizon < 1) Fail(line, "horizon must be at least 1");
    } else if (key == "seed") {
      Need(line, 2);
      file.seed = Parse<std::uint64_t>(line, line.tokens[1]);
    } else if (key == "topology") {
      Need(line, 2);
      file.topology_preset = line.tokens[1];
    } else if (key == "edge") {
      Need(line, 3);
      file.edges.push_back({ParseAgent(line, line.tokens[1], file.num_agents),
                            ParseAgent(line, line.tokens[2], file.num_agents)});
      file.has_edges = true;
    } else {
      Fail(line, "unknown directive '" + key + "'");
    }
  }
  if (file.num_agents < 1) throw InputError("scenario declares no agents");
  if (file.topology_preset && file.has_edges) {
    throw InputError("scenario gives both a topology preset and edges");
  }
  // GroundSet enforces one action per agent and unique names.
  (void)file.Ground();
  return file;
}

ScenarioFile LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  return ParseScenario(in);
}

GroundSet ScenarioFile::Ground() const {
  return GroundSet(agent_actions, action_names);
}

std::shared_ptr<const SetFunction> ScenarioFile::Objective(int horizon) const {
  if (motion) return CoverageFunction::MovingTargets(*motion, sensors, horizon);
  return std::make_shared<CoverageFunction>(num_targets, covers);
}

RewardScale ScenarioFile::Scale(const SetFunction& objective) const {
  if (r_max) return RewardScale{*r_max};
  int largest = 1;
  if (const auto* coverage = dynamic_cast<const CoverageFunction*>(&objective)) {
    largest = std::max(1, coverage->MaxCoverSize());
  }
  return RewardScale{static_cast<double>(largest)};
}

std::optional<Topology> ScenarioFile::DeclaredTopology() const {
  if (topology_preset) return TopologyFromPreset(*topology_preset, num_agents);
  if (has_edges) return Topology::Build(num_agents, edges);
  return std::nullopt;
}

Topology ParseTopology(std::istream& in) {
  int n = 0;
  std::vector<Edge> edges;
  for (const Line& line : Tokenize(in)) {
    const std::string& key = line.tokens[0];
    if (key == "agents") {
      Need(line, 2);
      n = Parse<int>(line, line.tokens[1]);
    } else if (key == "edge") {
      Need(line, 3);
      if (n <= 0) Fail(line, "'agents' must come first");
      edges.push_back({Parse<int>(line, line.tokens[1]),
                       Parse<int>(line, line.tokens[2])});
    } else {
      Fail(line, "unknown directive '" + key + "'");
    }
  }
  return Topology::Build(n, edges);
}

Topology LoadTopology(const std::string& preset_or_path, int num_agents) {
  std::ifstream in(preset_or_path);
  if (!in) return TopologyFromPreset(preset_or_path, num_agents);
  Topology topology = ParseTopology(in);
  if (topology.num_agents() != num_agents) {
    throw InputError("topology file has " +
                     std::to_string(topology.num_agents()) +
                     " agents, scenario has " + std::to_string(num_agents));
  }
  return topology;
}

Scenario MakeScenario(const ScenarioFile& file, Topology topology, int horizon,
                      std::uint64_t seed) {
  Scenario scenario;
  scenario.topology = std::move(topology);
  scenario.ground = file.Ground();
  scenario.objective = file.Objective(horizon);
  scenario.scale = file.Scale(*scenario.objective);
  scenario.horizon = horizon;
  scenario.seed = seed;
  scenario.Validate();
  return scenario;
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "NA";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void WriteTraceCsv(const Trace& trace, const GroundSet& ground,
                   std::ostream& out) {
  out << "t,agent,action,f_joint,reward_s,reward_available_at,msgs,evals\n";
  for (TimeStep t = 1; t <= trace.horizon(); ++t) {
    const std::string value = FormatNumber(trace.value(t));
    for (AgentId i = 0; i < trace.num_agents(); ++i) {
      const TraceRow& row = trace.row(t, i);
      out << t << ',' << i << ',' << ground.name(row.action) << ',' << value
          << ',' << (row.dropped() ? "NA" : FormatNumber(row.reward)) << ','
          << (row.dropped() ? std::string("NA")
                            : std::to_string(row.available_at))
          << ',' << row.messages << ',' << row.evaluations << '\n';
    }
  }
}

Trace ReadTraceCsv(std::istream& in, const Scenario& scenario) {
  std::string text;
  if (!std::getline(in, text) ||
      text != "t,agent,action,f_joint,reward_s,reward_available_at,msgs,evals") {
    throw InputError("trace CSV header mismatch");
  }
  struct Cell {
    TimeStep t;
    AgentId agent;
    ActionId action;
    double value;
    double reward;
    TimeStep available_at;
    int messages;
    int evaluations;
  };
  std::vector<Cell> cells;
  TimeStep horizon = 0;
  int number = 1;
  while (std::getline(in, text)) {
    ++number;
    if (text.empty()) continue;
    const Line line{number, {}};
    std::vector<std::string> fields;
    std::istringstream row(text);
    for (std::string field; std::getline(row, field, ',');) {
      fields.push_back(field);
    }
    if (fields.size() != 8) Fail(line, "expected 8 columns");
    Cell cell;
    cell.t = Parse<int>(line, fields[0]);
    cell.agent = Parse<int>(line, fields[1]);
    const auto action = scenario.ground.Find(fields[2]);
    if (!action) Fail(line, "unknown action '" + fields[2] + "'");
    cell.action = *action;
    cell.value = Parse<double>(line, fields[3]);
    cell.reward = fields[4] == "NA" ? std::nan("") : Parse<double>(line, fields[4]);
    cell.available_at = fields[5] == "NA" ? 0 : Parse<int>(line, fields[5]);
    cell.messages = Parse<int>(line, fields[6]);
    cell.evaluations = Parse<int>(line, fields[7]);
    if (cell.t < 1) Fail(line, "step must be >= 1");
    horizon = std::max(horizon, cell.t);
    cells.push_back(cell);
  }
  const int n = scenario.ground.num_agents();
  if (cells.size() != static_cast<std::size_t>(horizon) * n) {
    throw InputError("trace CSV does not have one row per (t, agent)");
  }
  Trace trace(n, horizon, scenario.seed);
  for (const Cell& cell : cells) {
    if (cell.agent < 0 || cell.agent >= n) {
      throw InputError("trace CSV agent out of range");
    }
    if (scenario.ground.owner(cell.action) != cell.agent) {
      throw InputError("trace CSV action not owned by its agent");
    }
    trace.SetAction(cell.t, cell.agent, cell.action);
    trace.set_value(cell.t, cell.value);
    TraceRow& row = trace.row(cell.t, cell.agent);
    row.reward = cell.reward;
    row.reward_raw = cell.reward * scenario.scale.r_max;
    row.available_at = cell.available_at;
    row.messages = cell.messages;
    row.evaluations = cell.evaluations;
  }
  for (const Cell& cell : cells) {
    if (cell.available_at > 0 && cell.available_at <= horizon) {
      trace.row(cell.available_at, cell.agent).fed_step = cell.t;
    }
  }
  return trace;
}

std::string BoundReportJson(const BoundReport& report,
                            const GroundSet& ground) {
  nlohmann::json j;
  j["window"] = {report.first, report.last};
  j["mean_objective"] = report.mean_value;
  std::vector<std::string> optimum;
  for (ActionId a : report.optimum.actions) optimum.push_back(ground.name(a));
  j["optimum"] = {{"actions", optimum},
                  {"mean_value", report.mean_optimum}};
  j["curvature"] = report.kappa;
  j["coin_per_agent"] = report.mean_coin;
  j["coin_sum"] = report.coin_sum;
  j["regret_per_agent"] = report.regret;
  j["regret_per_step"] = report.regret_per_step;
  j["max_actions_plus_delay"] = report.max_actions_plus_delay;
  j["bound_rhs"] = report.rhs;
  j["bound_slack"] = report.slack;
  j["centralized_rhs"] = report.centralized_rhs;
  j["decentralized_rhs"] = report.decentralized_rhs;
  return j.dump(2);
}

}  // namespace dog
