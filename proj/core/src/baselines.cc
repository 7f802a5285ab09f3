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

#include "dog/baselines.h"

#include <algorithm>
#include <string>

#include "dog/errors.h"

namespace dog {
namespace {

constexpr double kTieTolerance = 1e-12;

std::vector<ActionId> SortedActions(const GroundSet& ground, AgentId i) {
  const auto span = ground.actions(i);
  std::vector<ActionId> sorted(span.begin(), span.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

}  // namespace

JointAction BruteForceOptimal(const SetFunction& f, const GroundSet& ground,
                              std::span<const TimeStep> steps) {
  const int n = ground.num_agents();
  std::vector<std::vector<ActionId>> choices(n);
  std::uint64_t combos = 1;
  for (AgentId i = 0; i < n; ++i) {
    choices[i] = SortedActions(ground, i);
    combos *= choices[i].size();
    if (combos > kBruteForceLimit) {
      throw CapacityError("joint action space exceeds " +
                          std::to_string(kBruteForceLimit));
    }
  }

  // A static objective scores identically at every step.
  const bool is_static = f.horizon() == 0;
  auto score = [&](const std::vector<ActionId>& joint) {
    if (steps.empty()) return 0.0;
    if (is_static) {
      return f.Evaluate(steps.front(), joint) * static_cast<double>(steps.size());
    }
    double total = 0.0;
    for (TimeStep t : steps) total += f.Evaluate(t, joint);
    return total;
  };

  // Odometer over the cross product with agent 0 most significant, so the
  // first maximum met is the lexicographically smallest.
  std::vector<std::size_t> digit(n, 0);
  std::vector<ActionId> joint(n);
  JointAction best;
  bool have_best = false;
  while (true) {
    for (AgentId i = 0; i < n; ++i) joint[i] = choices[i][digit[i]];
    const double value = score(joint);
    if (!have_best || value > best.value + kTieTolerance) {
      best.actions = joint;
      best.value = value;
      have_best = true;
    }
    int k = n - 1;
    while (k >= 0 && ++digit[k] == choices[k].size()) {
      digit[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return best;
}

JointAction BruteForceOptimal(const SetFunction& f, const GroundSet& ground,
                              TimeStep first, TimeStep last) {
  std::vector<TimeStep> steps;
  for (TimeStep t = first; t <= last; ++t) steps.push_back(t);
  return BruteForceOptimal(f, ground, steps);
}

JointAction SequentialGreedy(const SetFunction& f, TimeStep t,
                             const GroundSet& ground,
                             std::span<const AgentId> order) {
  const int n = ground.num_agents();
  std::vector<bool> placed(n, false);
  for (AgentId i : order) {
    if (i < 0 || i >= n || placed[i]) {
      throw InputError("greedy order must be a permutation of the agents");
    }
    placed[i] = true;
  }
  if (static_cast<int>(order.size()) != n) {
    throw InputError("greedy order must be a permutation of the agents");
  }

  JointAction result;
  result.actions.assign(n, -1);
  std::vector<ActionId> chosen;
  for (AgentId i : order) {
    ActionId best = -1;
    double best_gain = 0.0;
    for (ActionId a : SortedActions(ground, i)) {
      const double gain = f.MarginalGain(t, a, chosen);
      if (best == -1 || gain > best_gain + kTieTolerance) {
        best = a;
        best_gain = gain;
      }
    }
    result.actions[i] = best;
    chosen.push_back(best);
  }
  result.value = f.Evaluate(t, result.actions);
  return result;
}

JointAction IsolatedGreedy(const SetFunction& f, TimeStep t,
                           const GroundSet& ground) {
  JointAction result;
  for (AgentId i = 0; i < ground.num_agents(); ++i) {
    ActionId best = -1;
    double best_value = 0.0;
    for (ActionId a : SortedActions(ground, i)) {
      const ActionId single[] = {a};
      const double value = f.Evaluate(t, single);
      if (best == -1 || value > best_value + kTieTolerance) {
        best = a;
        best_value = value;
      }
    }
    result.actions.push_back(best);
  }
  result.value = f.Evaluate(t, result.actions);
  return result;
}

}  // namespace dog
