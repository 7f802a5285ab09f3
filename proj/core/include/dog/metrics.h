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

// Post-hoc diagnostics on realized traces: centralization-of-information
// (coin), per-agent static regret, the approximation bound terms, and a
// pointwise audit of the inequality chain that yields the bound.

#ifndef DOG_METRICS_H_
#define DOG_METRICS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dog/baselines.h"
#include "dog/engine.h"
#include "dog/network.h"
#include "dog/objective.h"

namespace dog {

// f_t(a_{i,t}) - f_t(a_{i,t} | {a_{j,t}}_{j in N_i^c}).
double Coin(const SetFunction& f, TimeStep t, AgentId i,
            std::span<const ActionId> joint, const Topology& topology);

// max_{a in V_i} sum_t f_t(a | N_i's actions) - sum_t f_t(a_{i,t} | N_i's
// actions), over t in [first, last], in raw objective units.
double StaticRegret(const Trace& trace, AgentId i, const Scenario& scenario,
                    TimeStep first, TimeStep last);

// Same quantity computed from normalized rewards, then scaled by R_max.
double StaticRegretFromNormalized(const Trace& trace, AgentId i,
                                  const Scenario& scenario, TimeStep first,
                                  TimeStep last);

struct BoundReport {
  TimeStep first = 1;
  TimeStep last = 1;
  // f_t(A_t) for t in [first, last].
  std::vector<double> realized;
  double mean_value = 0.0;
  // Best fixed joint action over the whole trace horizon.
  JointAction optimum;
  double mean_optimum = 0.0;
  // max_t curvature over the trace horizon.
  double kappa = 0.0;
  std::vector<double> mean_coin;
  double coin_sum = 0.0;
  // Raw static regret per agent over the window.
  std::vector<double> regret;
  // sum_i regret_i / window length; the measured stand-in for the vanishing
  // term.
  double regret_per_step = 0.0;
  // max_i (|V_i| + d_i).
  int max_actions_plus_delay = 0;
  // (mean_optimum - kappa * coin_sum - regret_per_step) / (1 + kappa).
  double rhs = 0.0;
  double slack = 0.0;
  // mean_optimum / (1 + kappa) - regret_per_step.
  double centralized_rhs = 0.0;
  // (1 - kappa) * mean_optimum - regret_per_step.
  double decentralized_rhs = 0.0;
};

BoundReport BoundGap(const Trace& trace, const Scenario& scenario,
                        TimeStep first, TimeStep last);

struct ChainLink {
  std::string name;
  // False for links reported but not guaranteed pointwise.
  bool asserted = true;
  // Equality expected (|slack| small) rather than slack >= 0.
  bool identity = false;
  double min_slack = 0.0;
  double max_abs_slack = 0.0;
  int checked = 0;
  // Tuples excluded because a ratio denominator vanished.
  int skipped = 0;

  bool Holds(double tolerance) const;
};

struct ChainReport {
  bool all_hold = true;
  std::vector<ChainLink> links;
  // Per audited step: min slack of each link, in links order (NaN if none).
  std::vector<TimeStep> steps;
  std::vector<std::vector<double>> step_slacks;
  // sum_i Reg_i over the audited steps.
  double regret_term = 0.0;
  // regret_term - sum_t sum_i [f(a*_i | N_i) - f(a_{i,t} | N_i)] >= 0.
  double regret_link_slack = 0.0;

  const ChainLink& link(std::string_view name) const;
};

inline constexpr double kChainTolerance = 1e-9;

// Audits, on the realized joint actions at each step in `steps` (agents
// telescoped in id order):
//   telescoping                 f(A*) = f(A* + A_t) - sum_i f(a_i | A* + P_i)
//   union_bound                 f(A* + A_t) <= f(A_t) + sum_i f(a*_i | A_t)
//   curvature_ratio (reported)  f(a_i | A* + P_i) >= (1 - k) f(a_i | N_i)
//   neighborhood_submodularity  f(a*_i | A_t) <= f(a*_i | N_i)
//   greedy_telescoping          sum_i f(a_i | P_i) = f(A_t)
//   second_order                f(a_i|N_i) - f(a_i|P_i) <= f(a_i) - f(a_i|P_i\N_i)
//   complement_submodularity    f(a_i | N_i^c) <= f(a_i | P_i \ N_i)
// where P_i = {a_j : j < i}. Throws CapacityError if A* is not computable.
ChainReport VerifyInequalityChain(const Trace& trace, const Scenario& scenario,
                                std::span<const TimeStep> steps);

}  // namespace dog

#endif  // DOG_METRICS_H_
