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

// Offline comparators: the exact best fixed joint action, sequential greedy,
// and uncoordinated per-agent greedy. Ties always go to the smaller action id.

#ifndef DOG_BASELINES_H_
#define DOG_BASELINES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dog/objective.h"

namespace dog {

inline constexpr std::uint64_t kBruteForceLimit = 1'000'000;

// One action per agent, in agent order, with its value (summed over the
// steps it was scored on).
struct JointAction {
  std::vector<ActionId> actions;
  double value = 0.0;
};

// argmax over the cross product of sum_{t in steps} f_t(joint). Throws
// CapacityError when prod_i |V_i| exceeds kBruteForceLimit.
JointAction BruteForceOptimal(const SetFunction& f, const GroundSet& ground,
                              std::span<const TimeStep> steps);

// Convenience overload for steps 1..horizon.
JointAction BruteForceOptimal(const SetFunction& f, const GroundSet& ground,
                              TimeStep first, TimeStep last);

// Agents pick in `order`, each maximizing its marginal gain given the picks
// before it. value is f_t of the result.
JointAction SequentialGreedy(const SetFunction& f, TimeStep t,
                             const GroundSet& ground,
                             std::span<const AgentId> order);

// Each agent maximizes its own singleton value with no coordination.
JointAction IsolatedGreedy(const SetFunction& f, TimeStep t,
                           const GroundSet& ground);

}  // namespace dog

#endif  // DOG_BASELINES_H_
