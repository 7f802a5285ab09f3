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

#include "dog/learner.h"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <string>

#include "dog/errors.h"

namespace dog {

double LearningRate(int num_actions, int delay, int horizon) {
  if (num_actions < 1) throw InputError("learner needs at least one action");
  if (delay < 0) throw InputError("negative delay");
  if (horizon < 1) throw InputError("horizon must be at least 1");
  const double k = num_actions;
  return std::sqrt(std::log(k) / ((k + delay) * static_cast<double>(horizon)));
}

std::vector<double> EstimateRewards(int num_actions, int chosen,
                                    double chosen_probability, double reward) {
  std::vector<double> estimates(num_actions, 1.0);
  estimates[chosen] = 1.0 - (1.0 - reward) / chosen_probability;
  return estimates;
}

Learner::Learner(int num_actions, int delay, int horizon)
    : delay_(delay),
      horizon_(horizon),
      eta_(LearningRate(num_actions, delay, horizon)),
      log_weights_(num_actions, 0.0) {}

std::vector<double> Learner::Distribution() const {
  const double top =
      *std::max_element(log_weights_.begin(), log_weights_.end());
  std::vector<double> p(log_weights_.size());
  double total = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    p[a] = std::exp(log_weights_[a] - top);
    total += p[a];
  }
  for (double& x : p) x /= total;
  return p;
}

int Learner::Sample(TimeStep s, Rng& rng) {
  if (outstanding_.contains(s)) {
    throw ProtocolError("step " + std::to_string(s) + " already decided");
  }
  const std::vector<double> p = Distribution();
  const double u = rng.Uniform01();
  // The float sum of p may end just below 1; fall back to the last action.
  int index = static_cast<int>(p.size()) - 1;
  double cumulative = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    cumulative += p[a];
    if (u < cumulative) {
      index = static_cast<int>(a);
      break;
    }
  }
  outstanding_.emplace(s, Decision{index, p[index]});
  return index;
}

void Learner::Feed(TimeStep s, double reward) {
  auto it = outstanding_.find(s);
  if (it == outstanding_.end()) {
    throw ProtocolError("no outstanding decision for step " + std::to_string(s));
  }
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw InvariantError("reward " + std::to_string(reward) +
                         " is not normalized to [0, 1]");
  }
  const Decision decision = it->second;
  outstanding_.erase(it);
  const std::vector<double> estimates = EstimateRewards(
      num_actions(), decision.index, decision.probability, reward);
  for (std::size_t a = 0; a < log_weights_.size(); ++a) {
    log_weights_[a] += eta_ * estimates[a];
  }
  // Only differences matter; re-centre so the values stay bounded.
  const double top =
      *std::max_element(log_weights_.begin(), log_weights_.end());
  for (double& w : log_weights_) w -= top;
}

std::string Learner::ToJson() const {
  nlohmann::json j;
  j["num_actions"] = num_actions();
  j["delay"] = delay_;
  j["horizon"] = horizon_;
  j["learning_rate"] = eta_;
  j["log_weights"] = log_weights_;
  nlohmann::json pending = nlohmann::json::array();
  for (const auto& [s, d] : outstanding_) {
    pending.push_back({{"step", s}, {"index", d.index}, {"probability", d.probability}});
  }
  j["outstanding"] = pending;
  return j.dump();
}

Learner Learner::FromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    Learner learner(j.at("num_actions").get<int>(), j.at("delay").get<int>(),
                    j.at("horizon").get<int>());
    auto weights = j.at("log_weights").get<std::vector<double>>();
    if (static_cast<int>(weights.size()) != learner.num_actions()) {
      throw InputError("log_weights length does not match num_actions");
    }
    learner.log_weights_ = std::move(weights);
    for (const auto& entry : j.at("outstanding")) {
      Decision d{entry.at("index").get<int>(),
                 entry.at("probability").get<double>()};
      if (d.index < 0 || d.index >= learner.num_actions()) {
        throw InputError("outstanding decision index out of range");
      }
      learner.outstanding_.emplace(entry.at("step").get<TimeStep>(), d);
    }
    return learner;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad learner checkpoint: ") + e.what());
  }
}

}  // namespace dog
