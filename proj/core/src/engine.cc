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

#include "dog/engine.h"

#include <algorithm>
#include <limits>
#include <string>

#include "dog/errors.h"
#include "dog/learner.h"

namespace dog {

void Scenario::Validate() const {
  if (!objective) throw InputError("scenario has no objective");
  if (horizon < 1) throw InputError("horizon must be at least 1");
  if (topology.num_agents() != ground.num_agents()) {
    throw InputError("topology has " + std::to_string(topology.num_agents()) +
                     " agents but the ground set has " +
                     std::to_string(ground.num_agents()));
  }
  if (objective->num_elements() != ground.num_actions()) {
    throw InputError("objective size does not match the ground set");
  }
  if (objective->horizon() > 0 && objective->horizon() < horizon) {
    throw InputError("objective schedule is shorter than the horizon");
  }
  if (!(scale.r_max > 0.0)) throw InputError("R_max must be positive");
}

Trace::Trace(int num_agents, int horizon, std::uint64_t seed)
    : num_agents_(num_agents),
      horizon_(horizon),
      seed_(seed),
      actions_(static_cast<std::size_t>(num_agents) * horizon, -1),
      values_(horizon, 0.0),
      rows_(static_cast<std::size_t>(num_agents) * horizon) {}

std::span<const ActionId> Trace::joint(TimeStep t) const {
  if (t < 1 || t > horizon_) throw InputError("step outside trace");
  return std::span<const ActionId>(actions_).subspan(
      static_cast<std::size_t>(t - 1) * num_agents_, num_agents_);
}

TraceRow& Trace::row(TimeStep t, AgentId i) {
  if (t < 1 || t > horizon_ || i < 0 || i >= num_agents_) {
    throw InputError("trace cell out of range");
  }
  return rows_[static_cast<std::size_t>(t - 1) * num_agents_ + i];
}

void Trace::SetAction(TimeStep t, AgentId i, ActionId action) {
  row(t, i).action = action;
  actions_[static_cast<std::size_t>(t - 1) * num_agents_ + i] = action;
}

const TraceRow& Trace::row(TimeStep t, AgentId i) const {
  if (t < 1 || t > horizon_ || i < 0 || i >= num_agents_) {
    throw InputError("trace cell out of range");
  }
  return rows_[static_cast<std::size_t>(t - 1) * num_agents_ + i];
}

Reward RewardFor(const Scenario& scenario, AgentId i, TimeStep s,
                 ActionId own,
                 std::span<const std::pair<AgentId, ActionId>> neighbors) {
  const auto neighborhood = scenario.topology.in_neighborhood(i);
  const GroundSet& ground = scenario.ground;
  if (!ground.Contains(own) || ground.owner(own) != i) {
    throw InputError("action " + std::to_string(own) +
                     " is not owned by agent " + std::to_string(i));
  }
  std::vector<AgentId> got;
  std::vector<ActionId> context;
  for (const auto& [j, a] : neighbors) {
    if (!ground.Contains(a) || ground.owner(a) != j) {
      throw InputError("action " + std::to_string(a) +
                       " is not owned by agent " + std::to_string(j));
    }
    got.push_back(j);
    context.push_back(a);
  }
  std::sort(got.begin(), got.end());
  if (!std::equal(got.begin(), got.end(), neighborhood.begin(),
                  neighborhood.end())) {
    throw ProtocolError("neighbour actions for agent " + std::to_string(i) +
                        " at step " + std::to_string(s) +
                        " do not match its in-neighbourhood");
  }
  Reward r;
  r.raw = scenario.objective->MarginalGain(s, own, context);
  r.normalized = NormalizeReward(r.raw, scenario.scale);
  return r;
}

Rng AgentRng(std::uint64_t seed, AgentId agent) {
  return Rng(seed, static_cast<std::uint64_t>(agent));
}

Trace Run(const Scenario& scenario) {
  scenario.Validate();
  const int n = scenario.ground.num_agents();
  const int horizon = scenario.horizon;
  const SetFunction& f = *scenario.objective;
  const Topology& topology = scenario.topology;

  std::vector<Learner> learners;
  std::vector<Rng> rngs;
  for (AgentId i = 0; i < n; ++i) {
    learners.emplace_back(static_cast<int>(scenario.ground.actions(i).size()),
                          topology.delay(i), horizon);
    rngs.push_back(AgentRng(scenario.seed, i));
  }

  Trace trace(n, horizon, scenario.seed);
  MessageBus bus(topology);
  std::vector<ActionId> joint(n);

  for (TimeStep t = 1; t <= horizon; ++t) {
    // Every agent commits before any step-t message moves.
    for (AgentId i = 0; i < n; ++i) {
      const int index = learners[i].Sample(t, rngs[i]);
      joint[i] = scenario.ground.actions(i)[index];
      trace.SetAction(t, i, joint[i]);
    }
    for (AgentId i = 0; i < n; ++i) bus.Broadcast(i, t, joint[i]);
    bus.Step();
    trace.set_value(t, f.Evaluate(t, joint));

    for (AgentId i = 0; i < n; ++i) {
      TraceRow& row = trace.row(t, i);
      for (TimeStep s : bus.CompleteAt(i, t)) {
        const auto neighbors = bus.NeighborActions(i, s);
        TraceRow& decided = trace.row(s, i);
        const std::uint64_t before = f.evaluations();
        const Reward reward = RewardFor(scenario, i, s, decided.action, neighbors);
        row.evaluations += static_cast<int>(f.evaluations() - before);
        learners[i].Feed(s, reward.normalized);
        decided.reward_raw = reward.raw;
        decided.reward = reward.normalized;
        decided.available_at = t;
        row.fed_step = s;
      }
      row.messages = bus.counters(i).handled();
    }
  }
  for (auto& learner : learners) learner.DropOutstanding();
  return trace;
}

CounterSummary Counters(const Trace& trace) {
  CounterSummary summary;
  summary.min_evals_per_fed_step = std::numeric_limits<int>::max();
  long long messages = 0;
  for (TimeStep t = 1; t <= trace.horizon(); ++t) {
    for (AgentId i = 0; i < trace.num_agents(); ++i) {
      const TraceRow& row = trace.row(t, i);
      if (row.fed_step != 0) {
        ++summary.fed_cells;
        summary.min_evals_per_fed_step =
            std::min(summary.min_evals_per_fed_step, row.evaluations);
        summary.max_evals_per_fed_step =
            std::max(summary.max_evals_per_fed_step, row.evaluations);
      } else {
        summary.max_evals_unfed = std::max(summary.max_evals_unfed, row.evaluations);
      }
      messages += row.messages;
      summary.max_messages_per_agent_step =
          std::max(summary.max_messages_per_agent_step, row.messages);
    }
  }
  if (summary.fed_cells == 0) summary.min_evals_per_fed_step = 0;
  const double cells =
      static_cast<double>(trace.horizon()) * trace.num_agents();
  if (cells > 0) summary.mean_messages_per_agent_step = messages / cells;
  return summary;
}

std::vector<int> MessageSeries(const Trace& trace, AgentId agent) {
  std::vector<int> series(trace.horizon());
  for (TimeStep t = 1; t <= trace.horizon(); ++t) {
    series[t - 1] = trace.row(t, agent).messages;
  }
  return series;
}

}  // namespace dog
