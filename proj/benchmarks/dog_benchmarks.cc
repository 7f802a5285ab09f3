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

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "dog/baselines.h"
#include "dog/engine.h"
#include "dog/learner.h"
#include "dog/network.h"
#include "dog/objective.h"

namespace dog {
namespace {

std::vector<std::vector<int>> Covers(int actions, int targets, double p,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution hit(p);
  std::vector<std::vector<int>> covers(actions);
  for (auto& c : covers) {
    for (int k = 0; k < targets; ++k) {
      if (hit(rng)) c.push_back(k);
    }
  }
  return covers;
}

void BM_CoverageEvaluate(benchmark::State& state) {
  const int set_size = static_cast<int>(state.range(0));
  const CoverageFunction f(512, Covers(64, 512, 0.1, 1));
  std::vector<ActionId> set(set_size);
  std::iota(set.begin(), set.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(f.Evaluate(1, set));
}
BENCHMARK(BM_CoverageEvaluate)->Arg(1)->Arg(8)->Arg(32);

void BM_LearnerSampleFeed(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Learner learner(k, 0, 1 << 30);
  Rng rng(3);
  TimeStep t = 0;
  for (auto _ : state) {
    ++t;
    learner.Sample(t, rng);
    learner.Feed(t, 0.5);
  }
}
BENCHMARK(BM_LearnerSampleFeed)->Arg(4)->Arg(16)->Arg(64);

void BM_BusStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MessageBus bus(Topology::Ring(n));
  for (auto _ : state) {
    const TimeStep s = bus.now() + 1;
    for (AgentId i = 0; i < n; ++i) bus.Broadcast(i, s, i);
    benchmark::DoNotOptimize(bus.Step());
  }
}
BENCHMARK(BM_BusStep)->Arg(8)->Arg(32);

void BM_EngineRun(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Scenario s;
  s.topology = Topology::ErdosRenyi(n, 0.3, 5);
  const std::vector<int> sizes(n, 4);
  s.ground = GroundSet::Contiguous(sizes);
  s.objective = std::make_shared<CoverageFunction>(64, Covers(4 * n, 64, 0.1, 2));
  s.scale = RewardScale{64.0};
  s.horizon = 1000;
  s.seed = 1;
  s.Validate();
  for (auto _ : state) benchmark::DoNotOptimize(Run(s).value(s.horizon));
  state.SetItemsProcessed(state.iterations() * s.horizon);
}
BENCHMARK(BM_EngineRun)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<int> sizes(n, 4);
  const GroundSet ground = GroundSet::Contiguous(sizes);
  const CoverageFunction f(32, Covers(4 * n, 32, 0.2, 4));
  for (auto _ : state) benchmark::DoNotOptimize(BruteForceOptimal(f, ground, 1, 1));
}
BENCHMARK(BM_BruteForce)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dog

BENCHMARK_MAIN();
