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

// Exponential-weights bandit learner with delayed, importance-weighted
// feedback. One instance per agent.

#ifndef DOG_LEARNER_H_
#define DOG_LEARNER_H_

#include <map>
#include <string>
#include <vector>

#include "dog/objective.h"
#include "dog/rng.h"

namespace dog {

// sqrt(ln k / ((k + d) T)); 0 for k = 1.
double LearningRate(int num_actions, int delay, int horizon);

// Importance-weighted estimates for one round: every action gets 1 except the
// chosen one, which gets 1 - (1 - reward) / chosen_probability. Values below
// zero are kept.
std::vector<double> EstimateRewards(int num_actions, int chosen,
                                    double chosen_probability, double reward);

class Learner {
 public:
  struct Decision {
    int index = 0;
    double probability = 1.0;
  };

  // Throws InputError for num_actions < 1, delay < 0 or horizon < 1.
  Learner(int num_actions, int delay, int horizon);

  int num_actions() const { return static_cast<int>(log_weights_.size()); }
  int delay() const { return delay_; }
  int horizon() const { return horizon_; }
  double learning_rate() const { return eta_; }
  const std::vector<double>& log_weights() const { return log_weights_; }

  // w / |w|_1, computed as a softmax of the log-weights.
  std::vector<double> Distribution() const;

  // Draws an action index for step s and records it as outstanding. Throws
  // ProtocolError if step s was already decided.
  int Sample(TimeStep s, Rng& rng);

  // Applies the delayed reward (in [0, 1]) for the decision taken at step s.
  // Throws ProtocolError if s is not outstanding, InvariantError if the
  // reward is out of range.
  void Feed(TimeStep s, double reward);

  // Drops decisions whose feedback would land after the horizon.
  void DropOutstanding() { outstanding_.clear(); }

  const std::map<TimeStep, Decision>& outstanding() const {
    return outstanding_;
  }

  // Checkpoint as JSON text; see README for the schema.
  std::string ToJson() const;
  static Learner FromJson(const std::string& text);

 private:
  int delay_;
  int horizon_;
  double eta_;
  std::vector<double> log_weights_;
  std::map<TimeStep, Decision> outstanding_;
};

}  // namespace dog

#endif  // DOG_LEARNER_H_
