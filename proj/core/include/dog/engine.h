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

// Lockstep simulation of the distributed online greedy protocol: every agent
// samples, broadcasts, the bus steps once, and agents whose neighbourhood
// actions for an earlier step have fully arrived learn from that step.

#ifndef DOG_ENGINE_H_
#define DOG_ENGINE_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "dog/network.h"
#include "dog/objective.h"
#include "dog/rng.h"

namespace dog {

struct Scenario {
  Topology topology;
  GroundSet ground;
  std::shared_ptr<const SetFunction> objective;
  RewardScale scale;
  int horizon = 1;
  std::uint64_t seed = 0;

  // Throws InputError when the parts disagree (agent counts, ground set vs
  // objective size, horizon beyond a time-varying objective's schedule).
  void Validate() const;
};

// One (t, agent) cell of a trace.
struct TraceRow {
  ActionId action = -1;
  // Marginal gain of this decision given the neighbourhood, raw and
  // normalized; NaN while unknown or when dropped past the horizon.
  double reward_raw = std::numeric_limits<double>::quiet_NaN();
  double reward = std::numeric_limits<double>::quiet_NaN();
  // Step at which the reward was fed back (t + d_i); 0 when dropped.
  TimeStep available_at = 0;
  // Decision step fed during this step; 0 if none.
  TimeStep fed_step = 0;
  // Bus messages handled (first-time deliveries + relayed copies) by the
  // agent during this step.
  int messages = 0;
  // Objective evaluations the agent spent during this step.
  int evaluations = 0;

  bool dropped() const { return available_at == 0; }
};

class Trace {
 public:
  Trace() = default;
  Trace(int num_agents, int horizon, std::uint64_t seed);

  int num_agents() const { return num_agents_; }
  int horizon() const { return horizon_; }
  std::uint64_t seed() const { return seed_; }

  // A_t, one action per agent in agent order.
  std::span<const ActionId> joint(TimeStep t) const;
  double value(TimeStep t) const { return values_.at(t - 1); }

  TraceRow& row(TimeStep t, AgentId i);
  const TraceRow& row(TimeStep t, AgentId i) const;

  // Writes a_{i,t} into both the joint view and the row.
  void SetAction(TimeStep t, AgentId i, ActionId action);
  void set_value(TimeStep t, double v) { values_.at(t - 1) = v; }

 private:
  int num_agents_ = 0;
  int horizon_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<ActionId> actions_;  // [(t - 1) * n + i]
  std::vector<double> values_;     // f_t(A_t)
  std::vector<TraceRow> rows_;
};

struct Reward {
  double raw = 0.0;
  double normalized = 0.0;
};

// f_s(own | {a_{j,s}}_{j in N_i}) and its normalization. neighbors must cover
// exactly N_i (ProtocolError otherwise). Costs two objective evaluations.
Reward RewardFor(const Scenario& scenario, AgentId i, TimeStep s,
                 ActionId own,
                 std::span<const std::pair<AgentId, ActionId>> neighbors);

// Runs the protocol for scenario.horizon steps. Deterministic in the seed.
Trace Run(const Scenario& scenario);

// Per-agent random stream derived from (seed, agent).
Rng AgentRng(std::uint64_t seed, AgentId agent);

struct CounterSummary {
  // Over (agent, step) cells that fed a reward.
  int fed_cells = 0;
  int min_evals_per_fed_step = 0;
  int max_evals_per_fed_step = 0;
  // Max evaluations on cells without feedback; expected 0.
  int max_evals_unfed = 0;
  double mean_messages_per_agent_step = 0.0;
  int max_messages_per_agent_step = 0;
};

CounterSummary Counters(const Trace& trace);

// Messages handled by agent at each step t = 1..T (index t - 1).
std::vector<int> MessageSeries(const Trace& trace, AgentId agent);

}  // namespace dog

#endif  // DOG_ENGINE_H_
