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

#include "dog/objective.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dog/errors.h"
#include "dog/rng.h"

namespace dog {

// -- GroundSet ----------------------------------------------------------------

GroundSet::GroundSet(std::vector<std::vector<ActionId>> agent_actions,
                     std::vector<std::string> names)
    : agent_actions_(std::move(agent_actions)) {
  int total = 0;
  for (const auto& list : agent_actions_) {
    if (list.empty()) {
      throw InputError("every agent needs at least one action");
    }
    total += static_cast<int>(list.size());
  }
  owner_.assign(total, -1);
  for (AgentId i = 0; i < num_agents(); ++i) {
    for (ActionId a : agent_actions_[i]) {
      if (a < 0 || a >= total) {
        throw InputError("action id " + std::to_string(a) +
                         " outside dense range [0, " + std::to_string(total) +
                         ")");
      }
      if (owner_[a] != -1) {
        throw InputError("action id " + std::to_string(a) +
                         " listed more than once");
      }
      owner_[a] = i;
    }
  }
  if (names.empty()) {
    names_.reserve(total);
    for (int a = 0; a < total; ++a) names_.push_back("a" + std::to_string(a));
  } else {
    if (static_cast<int>(names.size()) != total) {
      throw InputError("expected one name per action");
    }
    names_ = std::move(names);
    std::vector<std::string> sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("action names must be unique");
    }
  }
}

GroundSet GroundSet::Contiguous(std::span<const int> sizes) {
  std::vector<std::vector<ActionId>> lists;
  ActionId next = 0;
  for (int size : sizes) {
    std::vector<ActionId> list;
    for (int k = 0; k < size; ++k) list.push_back(next++);
    lists.push_back(std::move(list));
  }
  return GroundSet(std::move(lists));
}

std::span<const ActionId> GroundSet::actions(AgentId agent) const {
  if (agent < 0 || agent >= num_agents()) {
    throw InputError("unknown agent " + std::to_string(agent));
  }
  return agent_actions_[agent];
}

AgentId GroundSet::owner(ActionId action) const {
  if (!Contains(action)) {
    throw InputError("unknown action id " + std::to_string(action));
  }
  return owner_[action];
}

const std::string& GroundSet::name(ActionId action) const {
  if (!Contains(action)) {
    throw InputError("unknown action id " + std::to_string(action));
  }
  return names_[action];
}

std::optional<ActionId> GroundSet::Find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<ActionId>(it - names_.begin());
}

// -- SetFunction --------------------------------------------------------------

SetFunction::SetFunction(int num_elements) : num_elements_(num_elements) {
  if (num_elements < 0) throw InputError("negative ground set size");
}

double SetFunction::Evaluate(TimeStep t, std::span<const ActionId> set) const {
  if (t < 1 || (horizon() > 0 && t > horizon())) {
    throw InputError("timestep " + std::to_string(t) + " outside horizon");
  }
  for (ActionId a : set) {
    if (a < 0 || a >= num_elements_) {
      throw InputError("unknown action id " + std::to_string(a));
    }
  }
  evaluations_.fetch_add(1, std::memory_order_relaxed);
  return DoEvaluate(t, set);
}

double SetFunction::MarginalGain(TimeStep t, ActionId action,
                                 std::span<const ActionId> set) const {
  std::vector<ActionId> with(set.begin(), set.end());
  with.push_back(action);
  const double after = Evaluate(t, with);
  const double before = Evaluate(t, set);
  return after - before;
}

// -- CoverageFunction ---------------------------------------------------------

CoverageFunction::CoverageFunction(int num_elements, int num_targets,
                                   int horizon)
    : SetFunction(num_elements),
      num_targets_(num_targets),
      horizon_(horizon),
      words_((num_targets + 63) / 64) {
  if (num_targets < 0) throw InputError("negative target count");
  const std::size_t steps = horizon == 0 ? 1 : static_cast<std::size_t>(horizon);
  bits_.assign(steps * num_elements * words_, 0);
}

CoverageFunction::CoverageFunction(int num_targets,
                                   std::vector<std::vector<int>> covers)
    : CoverageFunction(static_cast<int>(covers.size()), num_targets, 0) {
  for (ActionId a = 0; a < num_elements(); ++a) SetCover(0, a, covers[a]);
}

std::shared_ptr<CoverageFunction> CoverageFunction::FromSchedule(
    int num_targets,
    const std::vector<std::vector<std::vector<int>>>& covers_by_step) {
  if (covers_by_step.empty()) throw InputError("empty cover schedule");
  const int n = static_cast<int>(covers_by_step.front().size());
  const int horizon = static_cast<int>(covers_by_step.size());
  std::shared_ptr<CoverageFunction> f(
      new CoverageFunction(n, num_targets, horizon));
  for (int step = 0; step < horizon; ++step) {
    if (static_cast<int>(covers_by_step[step].size()) != n) {
      throw InputError("cover schedule rows differ in action count");
    }
    for (ActionId a = 0; a < n; ++a) f->SetCover(step, a, covers_by_step[step][a]);
  }
  return f;
}

std::shared_ptr<CoverageFunction> CoverageFunction::MovingTargets(
    const MotionModel& model, std::span<const SensorRegion> sensors,
    int horizon) {
  if (model.width < 1 || model.height < 1 || model.num_targets < 1) {
    throw InputError("motion model needs a non-empty grid and targets");
  }
  if (horizon < 1) throw InputError("horizon must be at least 1");
  const int n = static_cast<int>(sensors.size());
  std::shared_ptr<CoverageFunction> f(
      new CoverageFunction(n, model.num_targets, horizon));

  Rng rng(model.seed);
  std::vector<std::pair<int, int>> pos(model.num_targets);
  for (auto& [x, y] : pos) {
    x = rng.Index(model.width);
    y = rng.Index(model.height);
  }
  constexpr std::array<std::pair<int, int>, 5> kMoves = {
      {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  std::vector<int> seen;
  for (int step = 0; step < horizon; ++step) {
    if (step > 0) {
      for (auto& [x, y] : pos) {
        const auto [dx, dy] = kMoves[rng.Index(5)];
        x = std::clamp(x + dx, 0, model.width - 1);
        y = std::clamp(y + dy, 0, model.height - 1);
      }
    }
    for (ActionId a = 0; a < n; ++a) {
      const SensorRegion& r = sensors[a];
      seen.clear();
      for (int k = 0; k < model.num_targets; ++k) {
        const auto [x, y] = pos[k];
        if (x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1) seen.push_back(k);
      }
      f->SetCover(step, a, seen);
    }
  }
  return f;
}

void CoverageFunction::SetCover(int step_index, ActionId action,
                                std::span<const int> targets) {
  std::uint64_t* row =
      bits_.data() +
      (static_cast<std::size_t>(step_index) * num_elements() + action) * words_;
  for (int target : targets) {
    if (target < 0 || target >= num_targets_) {
      throw InputError("target id " + std::to_string(target) + " out of range");
    }
    row[target / 64] |= std::uint64_t{1} << (target % 64);
  }
}

const std::uint64_t* CoverageFunction::Row(int step_index,
                                           ActionId action) const {
  return bits_.data() +
         (static_cast<std::size_t>(step_index) * num_elements() + action) *
             words_;
}

std::vector<int> CoverageFunction::Cover(TimeStep t, ActionId action) const {
  if (t < 1 || (horizon_ > 0 && t > horizon_)) {
    throw InputError("timestep " + std::to_string(t) + " outside horizon");
  }
  if (action < 0 || action >= num_elements()) {
    throw InputError("unknown action id " + std::to_string(action));
  }
  const std::uint64_t* row = Row(horizon_ == 0 ? 0 : t - 1, action);
  std::vector<int> out;
  for (int target = 0; target < num_targets_; ++target) {
    if (row[target / 64] >> (target % 64) & 1) out.push_back(target);
  }
  return out;
}

int CoverageFunction::MaxCoverSize() const {
  const int steps = horizon_ == 0 ? 1 : horizon_;
  int best = 0;
  for (int step = 0; step < steps; ++step) {
    for (ActionId a = 0; a < num_elements(); ++a) {
      const std::uint64_t* row = Row(step, a);
      int count = 0;
      for (int w = 0; w < words_; ++w) count += std::popcount(row[w]);
      best = std::max(best, count);
    }
  }
  return best;
}

double CoverageFunction::DoEvaluate(TimeStep t,
                                    std::span<const ActionId> set) const {
  const int step_index = horizon_ == 0 ? 0 : t - 1;
  int count = 0;
  if (words_ == 1) {
    std::uint64_t acc = 0;
    for (ActionId a : set) acc |= *Row(step_index, a);
    return std::popcount(acc);
  }
  std::vector<std::uint64_t> acc(words_, 0);
  for (ActionId a : set) {
    const std::uint64_t* row = Row(step_index, a);
    for (int w = 0; w < words_; ++w) acc[w] |= row[w];
  }
  for (std::uint64_t word : acc) count += std::popcount(word);
  return count;
}

// -- TableFunction ------------------------------------------------------------

TableFunction::TableFunction(int num_elements, std::vector<double> values)
    : SetFunction(num_elements), values_(std::move(values)) {
  if (num_elements > 20) throw CapacityError("table functions hold <= 20 elements");
  if (values_.size() != (std::size_t{1} << num_elements)) {
    throw InputError("table needs exactly 2^n values");
  }
}

double TableFunction::DoEvaluate(TimeStep, std::span<const ActionId> set) const {
  std::uint64_t mask = 0;
  for (ActionId a : set) mask |= std::uint64_t{1} << a;
  return values_[mask];
}

// -- RewardScale --------------------------------------------------------------

double NormalizeReward(double raw, const RewardScale& scale) {
  if (!(scale.r_max > 0.0)) throw InvariantError("R_max must be positive");
  const double slack = 1e-12 * scale.r_max;
  if (raw < -slack || raw > scale.r_max + slack) {
    throw InvariantError("reward " + std::to_string(raw) +
                         " outside [0, R_max = " + std::to_string(scale.r_max) +
                         "]");
  }
  return std::clamp(raw / scale.r_max, 0.0, 1.0);
}

// -- Exhaustive checks --------------------------------------------------------

namespace {

SubsetWitness MakeWitness(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                          ActionId element, double lhs, double rhs) {
  SubsetWitness w;
  w.a = MaskToSet(a);
  w.b = MaskToSet(b);
  w.c = MaskToSet(c);
  w.element = element;
  w.lhs = lhs;
  w.rhs = rhs;
  return w;
}

void RequireExhaustiveScale(const SetFunction& f) {
  if (f.num_elements() > kExhaustiveLimit) {
    throw CapacityError("exhaustive check needs |V| <= " +
                        std::to_string(kExhaustiveLimit) + ", got " +
                        std::to_string(f.num_elements()));
  }
}

}  // namespace

std::vector<ActionId> MaskToSet(std::uint64_t mask) {
  std::vector<ActionId> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

std::vector<double> SubsetValues(const SetFunction& f, TimeStep t) {
  RequireExhaustiveScale(f);
  const std::uint64_t count = std::uint64_t{1} << f.num_elements();
  std::vector<double> values(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    values[mask] = f.Evaluate(t, MaskToSet(mask));
  }
  return values;
}

PropertyReport CheckSubmodularMonotone(const SetFunction& f, TimeStep t) {
  const std::vector<double> v = SubsetValues(f, t);
  const int n = f.num_elements();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  PropertyReport report;

  if (std::abs(v[0]) > kCheckTolerance) {
    report.normalized = false;
    report.witness = MakeWitness(0, 0, 0, -1, v[0], 0.0);
  }
  // Every pair A subset-of B: B ranges over all masks, A over its submasks.
  for (std::uint64_t b = 0; b <= full; ++b) {
    for (std::uint64_t a = b;; a = (a - 1) & b) {
      if (report.monotone && v[a] > v[b] + kCheckTolerance) {
        report.monotone = false;
        if (!report.witness) {
          report.witness = MakeWitness(a, b, 0, -1, v[a], v[b]);
        }
      }
      if (report.submodular) {
        for (int s = 0; s < n; ++s) {
          const std::uint64_t bit = std::uint64_t{1} << s;
          const double gain_a = v[a | bit] - v[a];
          const double gain_b = v[b | bit] - v[b];
          if (gain_a + kCheckTolerance < gain_b) {
            report.submodular = false;
            if (!report.witness) {
              report.witness = MakeWitness(a, b, 0, s, gain_a, gain_b);
            }
            break;
          }
        }
      }
      if (a == 0) break;
    }
  }
  return report;
}

SecondOrderReport CheckSecondOrder(const SetFunction& f, TimeStep t) {
  const std::vector<double> v = SubsetValues(f, t);
  const int n = f.num_elements();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  SecondOrderReport report;
  report.min_slack = std::numeric_limits<double>::infinity();

  auto gain = [&v](std::uint64_t set, std::uint64_t bit) {
    return v[set | bit] - v[set];
  };
  for (std::uint64_t c = 0; c <= full; ++c) {
    const std::uint64_t rest_c = full & ~c;
    for (std::uint64_t a = rest_c;; a = (a - 1) & rest_c) {
      const std::uint64_t rest_ac = rest_c & ~a;
      for (std::uint64_t b = rest_ac;; b = (b - 1) & rest_ac) {
        for (int s = 0; s < n; ++s) {
          const std::uint64_t bit = std::uint64_t{1} << s;
          const double lhs = gain(c, bit) - gain(a | c, bit);
          const double rhs = gain(b | c, bit) - gain(a | b | c, bit);
          const double slack = lhs - rhs;
          if (slack < report.min_slack) report.min_slack = slack;
          if (slack < -kCheckTolerance && report.holds) {
            report.holds = false;
            report.witness = MakeWitness(a, b, c, s, lhs, rhs);
          }
        }
        if (b == 0) break;
      }
      if (a == 0) break;
    }
  }
  if (n == 0) report.min_slack = 0.0;
  return report;
}

double Curvature(const SetFunction& f, TimeStep t) {
  const int n = f.num_elements();
  std::vector<ActionId> all(n);
  for (ActionId a = 0; a < n; ++a) all[a] = a;
  const double full_value = f.Evaluate(t, all);

  double min_ratio = std::numeric_limits<double>::infinity();
  std::vector<ActionId> without;
  for (ActionId v = 0; v < n; ++v) {
    const ActionId single[] = {v};
    const double singleton = f.Evaluate(t, single);
    if (singleton <= 0.0) continue;  // 0/0: excluded from the min
    without.clear();
    for (ActionId a = 0; a < n; ++a) {
      if (a != v) without.push_back(a);
    }
    const double ratio = (full_value - f.Evaluate(t, without)) / singleton;
    min_ratio = std::min(min_ratio, ratio);
  }
  if (min_ratio == std::numeric_limits<double>::infinity()) return 0.0;
  return std::clamp(1.0 - min_ratio, 0.0, 1.0);
}

double CurvatureOverHorizon(const SetFunction& f, TimeStep first,
                            TimeStep last) {
  double kappa = 0.0;
  if (f.horizon() == 0) return Curvature(f, first);
  for (TimeStep t = first; t <= last; ++t) kappa = std::max(kappa, Curvature(f, t));
  return kappa;
}

}  // namespace dog
