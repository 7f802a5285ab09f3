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

#include "dog/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dog/errors.h"

namespace dog {
namespace {

void CheckWindow(const Trace& trace, TimeStep first, TimeStep last) {
  if (first < 1 || last > trace.horizon() || first > last) {
    throw InputError("window [" + std::to_string(first) + ", " +
                     std::to_string(last) + "] outside the trace");
  }
}

std::vector<ActionId> Pick(std::span<const ActionId> joint,
                           std::span<const AgentId> agents) {
  std::vector<ActionId> out;
  out.reserve(agents.size());
  for (AgentId j : agents) out.push_back(joint[j]);
  return out;
}

// Per-action gain sums and the realized sum for agent i; the regret is then
// max(sums) - realized. `transform` maps each raw gain before summing.
template <typename Transform>
double RegretWith(const Trace& trace, AgentId i, const Scenario& scenario,
                  TimeStep first, TimeStep last, Transform transform) {
  CheckWindow(trace, first, last);
  const SetFunction& f = *scenario.objective;
  const auto neighborhood = scenario.topology.in_neighborhood(i);
  const auto actions = scenario.ground.actions(i);
  std::vector<double> sums(actions.size(), 0.0);
  double realized = 0.0;
  for (TimeStep t = first; t <= last; ++t) {
    const auto joint = trace.joint(t);
    const std::vector<ActionId> context = Pick(joint, neighborhood);
    for (std::size_t k = 0; k < actions.size(); ++k) {
      const double gain = transform(f.MarginalGain(t, actions[k], context));
      sums[k] += gain;
      if (actions[k] == joint[i]) realized += gain;
    }
  }
  return *std::max_element(sums.begin(), sums.end()) - realized;
}

}  // namespace

double Coin(const SetFunction& f, TimeStep t, AgentId i,
            std::span<const ActionId> joint, const Topology& topology) {
  const ActionId own[] = {joint[i]};
  const double alone = f.Evaluate(t, own);
  const std::vector<ActionId> outside = Pick(joint, topology.complement(i));
  return alone - f.MarginalGain(t, joint[i], outside);
}

double StaticRegret(const Trace& trace, AgentId i, const Scenario& scenario,
                    TimeStep first, TimeStep last) {
  return RegretWith(trace, i, scenario, first, last,
                    [](double gain) { return gain; });
}

double StaticRegretFromNormalized(const Trace& trace, AgentId i,
                                  const Scenario& scenario, TimeStep first,
                                  TimeStep last) {
  const RewardScale scale = scenario.scale;
  return scale.r_max * RegretWith(trace, i, scenario, first, last,
                                  [scale](double gain) {
                                    return NormalizeReward(gain, scale);
                                  });
}

BoundReport BoundGap(const Trace& trace, const Scenario& scenario,
                        TimeStep first, TimeStep last) {
  CheckWindow(trace, first, last);
  const SetFunction& f = *scenario.objective;
  const Topology& topology = scenario.topology;
  const int n = trace.num_agents();
  const double length = last - first + 1;

  BoundReport report;
  report.first = first;
  report.last = last;
  report.optimum = BruteForceOptimal(f, scenario.ground, 1, trace.horizon());
  report.kappa = CurvatureOverHorizon(f, 1, trace.horizon());
  report.mean_coin.assign(n, 0.0);

  double optimum_sum = 0.0;
  for (TimeStep t = first; t <= last; ++t) {
    report.realized.push_back(trace.value(t));
    report.mean_value += trace.value(t);
    optimum_sum += f.Evaluate(t, report.optimum.actions);
    const auto joint = trace.joint(t);
    for (AgentId i = 0; i < n; ++i) {
      report.mean_coin[i] += Coin(f, t, i, joint, topology);
    }
  }
  report.mean_value /= length;
  report.mean_optimum = optimum_sum / length;
  for (double& c : report.mean_coin) {
    c /= length;
    report.coin_sum += c;
  }

  double regret_total = 0.0;
  for (AgentId i = 0; i < n; ++i) {
    report.regret.push_back(StaticRegret(trace, i, scenario, first, last));
    regret_total += report.regret.back();
    report.max_actions_plus_delay = std::max(
        report.max_actions_plus_delay,
        static_cast<int>(scenario.ground.actions(i).size()) + topology.delay(i));
  }
  report.regret_per_step = regret_total / length;

  const double k = report.kappa;
  report.rhs = (report.mean_optimum - k * report.coin_sum -
                report.regret_per_step) /
               (1.0 + k);
  report.slack = report.mean_value - report.rhs;
  report.centralized_rhs =
      report.mean_optimum / (1.0 + k) - report.regret_per_step;
  report.decentralized_rhs =
      (1.0 - k) * report.mean_optimum - report.regret_per_step;
  return report;
}

bool ChainLink::Holds(double tolerance) const {
  if (checked == 0) return true;
  if (identity) return max_abs_slack <= tolerance;
  return min_slack >= -tolerance;
}

const ChainLink& ChainReport::link(std::string_view name) const {
  for (const ChainLink& l : links) {
    if (l.name == name) return l;
  }
  throw InputError("no chain link named '" + std::string(name) + "'");
}

ChainReport VerifyInequalityChain(const Trace& trace, const Scenario& scenario,
                                std::span<const TimeStep> steps) {
  const SetFunction& f = *scenario.objective;
  const Topology& topology = scenario.topology;
  const int n = trace.num_agents();
  const JointAction optimum =
      BruteForceOptimal(f, scenario.ground, 1, trace.horizon());
  const double kappa = CurvatureOverHorizon(f, 1, trace.horizon());
  const std::vector<ActionId>& star = optimum.actions;

  enum Link {
    kTelescoping,
    kUnionBound,
    kCurvatureRatio,
    kNeighborhoodSubmodularity,
    kGreedyTelescoping,
    kSecondOrder,
    kComplementSubmodularity,
    kNumLinks
  };
  ChainReport report;
  const char* names[kNumLinks] = {"telescoping",
                                  "union_bound",
                                  "curvature_ratio",
                                  "neighborhood_submodularity",
                                  "greedy_telescoping",
                                  "second_order",
                                  "complement_submodularity"};
  for (int k = 0; k < kNumLinks; ++k) {
    ChainLink link;
    link.name = names[k];
    link.asserted = k != kCurvatureRatio;
    link.identity = k == kTelescoping || k == kGreedyTelescoping;
    link.min_slack = std::numeric_limits<double>::infinity();
    report.links.push_back(link);
  }

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> step_min(kNumLinks);
  auto record = [&](int k, double slack) {
    ChainLink& link = report.links[k];
    ++link.checked;
    link.min_slack = std::min(link.min_slack, slack);
    link.max_abs_slack = std::max(link.max_abs_slack, std::abs(slack));
    step_min[k] = std::isnan(step_min[k]) ? slack : std::min(step_min[k], slack);
  };

  std::vector<std::vector<double>> fixed_sums(n);
  std::vector<double> realized_sums(n, 0.0);
  for (AgentId i = 0; i < n; ++i) {
    fixed_sums[i].assign(scenario.ground.actions(i).size(), 0.0);
  }
  double regret_step_sum = 0.0;

  for (TimeStep t : steps) {
    std::fill(step_min.begin(), step_min.end(), kNaN);
    const auto span = trace.joint(t);
    const std::vector<ActionId> joint(span.begin(), span.end());

    // Telescope over A* plus prefixes of A_t.
    std::vector<ActionId> grown = star;
    double telescoped = 0.0;
    for (AgentId i = 0; i < n; ++i) {
      telescoped += f.MarginalGain(t, joint[i], grown);
      grown.push_back(joint[i]);
    }
    const double with_star = f.Evaluate(t, grown);
    const double star_value = f.Evaluate(t, star);
    record(kTelescoping, star_value - (with_star - telescoped));

    const double realized = f.Evaluate(t, joint);
    double star_gain_sum = 0.0;
    for (AgentId i = 0; i < n; ++i) {
      star_gain_sum += f.MarginalGain(t, star[i], joint);
    }
    record(kUnionBound, realized + star_gain_sum - with_star);

    double prefix_sum = 0.0;
    std::vector<ActionId> prefix;
    std::vector<ActionId> star_prefix = star;
    for (AgentId i = 0; i < n; ++i) {
      const ActionId a = joint[i];
      const auto neighborhood = topology.in_neighborhood(i);
      const std::vector<ActionId> neighbors = Pick(joint, neighborhood);
      std::vector<ActionId> outside_prefix;
      for (AgentId j = 0; j < i; ++j) {
        if (!topology.Hears(i, j)) outside_prefix.push_back(joint[j]);
      }
      const std::vector<ActionId> complement =
          Pick(joint, topology.complement(i));
      const ActionId own[] = {a};

      const double alone = f.Evaluate(t, own);
      const double given_neighbors = f.MarginalGain(t, a, neighbors);
      const double given_prefix = f.MarginalGain(t, a, prefix);
      const double given_outside_prefix = f.MarginalGain(t, a, outside_prefix);
      const double given_complement = f.MarginalGain(t, a, complement);
      const double given_star_prefix = f.MarginalGain(t, a, star_prefix);

      if (alone <= 0.0 || given_neighbors <= 0.0) {
        ++report.links[kCurvatureRatio].skipped;
      } else {
        record(kCurvatureRatio,
               given_star_prefix - (1.0 - kappa) * given_neighbors);
      }
      record(kNeighborhoodSubmodularity,
             f.MarginalGain(t, star[i], neighbors) -
                 f.MarginalGain(t, star[i], joint));
      record(kSecondOrder, (alone - given_outside_prefix) -
                               (given_neighbors - given_prefix));
      record(kComplementSubmodularity, given_outside_prefix - given_complement);

      prefix_sum += given_prefix;
      prefix.push_back(a);
      star_prefix.push_back(a);

      // Regret bookkeeping: a*_i against a_{i,t}, both given N_i.
      const double star_given_neighbors =
          f.MarginalGain(t, star[i], neighbors);
      regret_step_sum += star_given_neighbors - given_neighbors;
      const auto actions = scenario.ground.actions(i);
      for (std::size_t k = 0; k < actions.size(); ++k) {
        fixed_sums[i][k] += f.MarginalGain(t, actions[k], neighbors);
      }
      realized_sums[i] += given_neighbors;
    }
    record(kGreedyTelescoping, prefix_sum - realized);

    report.steps.push_back(t);
    report.step_slacks.push_back(step_min);
  }

  for (AgentId i = 0; i < n; ++i) {
    report.regret_term +=
        *std::max_element(fixed_sums[i].begin(), fixed_sums[i].end()) -
        realized_sums[i];
  }
  report.regret_link_slack = report.regret_term - regret_step_sum;

  for (ChainLink& link : report.links) {
    if (link.checked == 0) link.min_slack = 0.0;
    if (link.asserted && !link.Holds(kChainTolerance)) report.all_hold = false;
  }
  if (report.regret_link_slack < -kChainTolerance) report.all_hold = false;
  return report;
}

}  // namespace dog
