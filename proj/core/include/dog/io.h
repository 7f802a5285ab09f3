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

// Plain-text scenario and topology files, the per-step trace CSV, and the
// JSON run summary. Formats are documented in README.md.

#ifndef DOG_IO_H_
#define DOG_IO_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dog/engine.h"
#include "dog/metrics.h"
#include "dog/network.h"
#include "dog/objective.h"

namespace dog {

// Parsed scenario file, before a horizon and topology are bound to it.
struct ScenarioFile {
  int num_agents = 0;
  std::vector<std::vector<ActionId>> agent_actions;
  std::vector<std::string> action_names;

  // Static coverage: explicit covers, one per action.
  int num_targets = 0;
  std::vector<std::vector<int>> covers;

  // Moving-target coverage: motion model plus one sensor region per action.
  std::optional<MotionModel> motion;
  std::vector<SensorRegion> sensors;

  std::optional<double> r_max;
  std::optional<int> horizon;
  std::optional<std::uint64_t> seed;
  // Preset name, or explicit edges.
  std::optional<std::string> topology_preset;
  std::vector<Edge> edges;
  bool has_edges = false;

  GroundSet Ground() const;
  // Builds the objective; moving-target objectives need the horizon.
  std::shared_ptr<const SetFunction> Objective(int horizon) const;
  // Explicit rmax, else the largest cover size (at least 1).
  RewardScale Scale(const SetFunction& objective) const;
  // Topology declared in the file, if any.
  std::optional<Topology> DeclaredTopology() const;
};

ScenarioFile ParseScenario(std::istream& in);
ScenarioFile LoadScenarioFile(const std::string& path);

// "agents <n>" followed by "edge <from> <to>" lines.
Topology ParseTopology(std::istream& in);
// A preset name (see TopologyFromPreset) or a path to a topology file.
Topology LoadTopology(const std::string& preset_or_path, int num_agents);

// Binds a parsed file to a topology, horizon and seed.
Scenario MakeScenario(const ScenarioFile& file, Topology topology, int horizon,
                      std::uint64_t seed);

// Columns: t,agent,action,f_joint,reward_s,reward_available_at,msgs,evals.
// reward_s is the normalized reward of the decision taken at t and
// reward_available_at the step it was fed back; both NA when dropped.
void WriteTraceCsv(const Trace& trace, const GroundSet& ground,
                   std::ostream& out);
Trace ReadTraceCsv(std::istream& in, const Scenario& scenario);

// Formats a double the way the trace CSV does.
std::string FormatNumber(double value);

std::string BoundReportJson(const BoundReport& report, const GroundSet& ground);

}  // namespace dog

#endif  // DOG_IO_H_
