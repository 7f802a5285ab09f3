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

// Set-function objectives over the joint ground set of all agents' actions:
// coverage (static or moving-target) objectives, explicit lookup tables, and
// the exhaustive structural checks used to validate them.

#ifndef DOG_OBJECTIVE_H_
#define DOG_OBJECTIVE_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dog {

using AgentId = int;
using ActionId = int;
// Timesteps are 1-based, matching t in [T].
using TimeStep = int;

// Largest ground set accepted by the exhaustive checks (2^n / 4^n scans).
inline constexpr int kExhaustiveLimit = 12;

// Per-agent action lists. Action ids are dense: the lists partition
// {0, ..., num_actions() - 1}.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::vector<ActionId>> agent_actions,
                     std::vector<std::string> names = {});

  // Agent i owns the next sizes[i] consecutive ids.
  static GroundSet Contiguous(std::span<const int> sizes);

  int num_agents() const { return static_cast<int>(agent_actions_.size()); }
  int num_actions() const { return static_cast<int>(owner_.size()); }
  std::span<const ActionId> actions(AgentId agent) const;
  AgentId owner(ActionId action) const;
  const std::string& name(ActionId action) const;
  std::optional<ActionId> Find(std::string_view name) const;
  bool Contains(ActionId action) const {
    return action >= 0 && action < num_actions();
  }

 private:
  std::vector<std::vector<ActionId>> agent_actions_;
  std::vector<AgentId> owner_;
  std::vector<std::string> names_;
};

// A set function f_t : 2^V -> R over element ids {0, ..., n-1}, possibly
// varying with t. Evaluate() is the only counted entry point.
class SetFunction {
 public:
  explicit SetFunction(int num_elements);
  virtual ~SetFunction() = default;

  SetFunction(const SetFunction&) = delete;
  SetFunction& operator=(const SetFunction&) = delete;

  int num_elements() const { return num_elements_; }

  // Number of timesteps the function is defined for; 0 means static.
  virtual int horizon() const { return 0; }

  // f_t(set). Duplicated ids are treated as one. Throws InputError on
  // unknown ids or a timestep outside the horizon.
  double Evaluate(TimeStep t, std::span<const ActionId> set) const;

  // f_t(action | set) = f_t(set + action) - f_t(set). Always exactly two
  // Evaluate() calls, including when set is empty or already has action.
  double MarginalGain(TimeStep t, ActionId action,
                      std::span<const ActionId> set) const;

  std::uint64_t evaluations() const {
    return evaluations_.load(std::memory_order_relaxed);
  }

 protected:
  // Called with validated, in-range ids.
  virtual double DoEvaluate(TimeStep t,
                            std::span<const ActionId> set) const = 0;

 private:
  int num_elements_;
  mutable std::atomic<std::uint64_t> evaluations_{0};
};

// Rectangle of grid cells (inclusive bounds) observed by one sensing action.
struct SensorRegion {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;
};

// Targets start uniformly on a width x height grid and take one lazy random
// step (stay or move to a 4-neighbour, clamped at the border) per timestep.
struct MotionModel {
  int width = 1;
  int height = 1;
  int num_targets = 1;
  std::uint64_t seed = 0;
};

// f_t(S) = number of distinct targets covered by the actions in S.
class CoverageFunction : public SetFunction {
 public:
  // Static objective: covers[a] lists the target ids action a sees.
  CoverageFunction(int num_targets, std::vector<std::vector<int>> covers);

  // Time-varying objective: covers_by_step[t - 1][a] for t in [1, T].
  static std::shared_ptr<CoverageFunction> FromSchedule(
      int num_targets,
      const std::vector<std::vector<std::vector<int>>>& covers_by_step);

  static std::shared_ptr<CoverageFunction> MovingTargets(
      const MotionModel& model, std::span<const SensorRegion> sensors,
      int horizon);

  int horizon() const override { return horizon_; }
  int num_targets() const { return num_targets_; }

  std::vector<int> Cover(TimeStep t, ActionId action) const;

  // Largest singleton value over all actions and timesteps.
  int MaxCoverSize() const;

 protected:
  double DoEvaluate(TimeStep t, std::span<const ActionId> set) const override;

 private:
  CoverageFunction(int num_elements, int num_targets, int horizon);
  void SetCover(int step_index, ActionId action, std::span<const int> targets);
  const std::uint64_t* Row(int step_index, ActionId action) const;

  int num_targets_;
  int horizon_;  // 0 for static
  int words_;
  // [step][action][word]
  std::vector<std::uint64_t> bits_;
};

// Explicit static set function given by its value on every subset.
// values[mask] = f({i : bit i of mask set}).
class TableFunction : public SetFunction {
 public:
  TableFunction(int num_elements, std::vector<double> values);

  const std::vector<double>& values() const { return values_; }

 protected:
  double DoEvaluate(TimeStep t, std::span<const ActionId> set) const override;

 private:
  std::vector<double> values_;
};

// R_max: an a-priori upper bound on every singleton value.
struct RewardScale {
  double r_max = 1.0;
};

// raw / r_max. Throws InvariantError when raw falls outside [0, r_max].
double NormalizeReward(double raw, const RewardScale& scale);

// --- Exhaustive structural checks (num_elements <= kExhaustiveLimit) ---

// Decodes a subset bitmask into element ids.
std::vector<ActionId> MaskToSet(std::uint64_t mask);

// f_t on all 2^n subsets, indexed by bitmask.
std::vector<double> SubsetValues(const SetFunction& f, TimeStep t);

// Counterexample for a failed property check. For monotonicity, a is the
// smaller set and b the larger; for the marginal-gain checks, element is s.
struct SubsetWitness {
  std::vector<ActionId> a;
  std::vector<ActionId> b;
  std::vector<ActionId> c;
  ActionId element = -1;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PropertyReport {
  bool normalized = true;
  bool monotone = true;
  bool submodular = true;
  // First counterexample found, if any.
  std::optional<SubsetWitness> witness;

  bool ok() const { return normalized && monotone && submodular; }
};

struct SecondOrderReport {
  bool holds = true;
  std::optional<SubsetWitness> witness;
  // min over all tuples of LHS - RHS.
  double min_slack = 0.0;
};

inline constexpr double kCheckTolerance = 1e-9;

// Normalization, monotonicity over all A subset-of B, and submodularity over
// all A subset-of B and s. Throws CapacityError above kExhaustiveLimit.
PropertyReport CheckSubmodularMonotone(const SetFunction& f, TimeStep t);

// f(s|C) - f(s|A+C) >= f(s|B+C) - f(s|A+B+C) for all pairwise disjoint
// A, B, C and every s.
SecondOrderReport CheckSecondOrder(const SetFunction& f, TimeStep t);

// 1 - min_v [f(V) - f(V - v)] / f(v), skipping v with f(v) = 0; 0 when every
// singleton is zero. Clamped to [0, 1].
double Curvature(const SetFunction& f, TimeStep t);

// max over t in [first, last] of Curvature(f, t).
double CurvatureOverHorizon(const SetFunction& f, TimeStep first,
                            TimeStep last);

}  // namespace dog

#endif  // DOG_OBJECTIVE_H_
