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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dog/baselines.h"
#include "dog/engine.h"
#include "dog/io.h"
#include "dog/learner.h"
#include "dog/metrics.h"
#include "dog/network.h"
#include "dog/objective.h"
#include "dog/rng.h"
#include "oracles.h"
#include "scenarios.h"

namespace dog {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Stats {
  double mean = 0.0;
  double se = 0.0;
};

Stats Summarize(const std::vector<double>& xs) {
  Stats s;
  const double n = static_cast<double>(xs.size());
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) return s;
  double sq = 0.0;
  for (double x : xs) sq += (x - s.mean) * (x - s.mean);
  s.se = std::sqrt(sq / (n - 1) / n);
  return s;
}

std::string Format(const char* fmt, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), fmt, args...);
  return buffer;
}

// --- 1 ---------------------------------------------------------------------

Outcome StructuralProperties() {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> size(1, 10);
  std::uniform_int_distribution<int> targets(1, 12);
  std::uniform_real_distribution<double> density(0.05, 0.6);
  int passed = 0;
  constexpr int kInstances = 120;
  for (int k = 0; k < kInstances; ++k) {
    const int n = size(rng);
    const int m = targets(rng);
    const CoverageFunction f(m, oracle::RandomCovers(rng, n, m, density(rng)));
    const PropertyReport props = CheckSubmodularMonotone(f, 1);
    const SecondOrderReport second = CheckSecondOrder(f, 1);
    if (props.ok() && second.holds) ++passed;
  }
  return {passed == kInstances,
          Format("%d/%d random coverage objectives normalized, monotone, "
                 "submodular, 2nd-order submodular",
                 passed, kInstances)};
}

// --- 2 ---------------------------------------------------------------------

Outcome EstimatorUnbiasedness() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> arms(1, 16);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = arms(rng);
    std::vector<double> p(k);
    double total = 0.0;
    for (double& x : p) total += x = 1e-3 + unit(rng);
    for (double& x : p) x /= total;
    std::vector<double> r(k);
    for (double& x : r) x = unit(rng);
    std::vector<double> expectation(k, 0.0);
    for (int chosen = 0; chosen < k; ++chosen) {
      const auto e = EstimateRewards(k, chosen, p[chosen], r[chosen]);
      for (int a = 0; a < k; ++a) expectation[a] += p[chosen] * e[a];
    }
    for (int a = 0; a < k; ++a) {
      worst = std::max(worst, std::abs(expectation[a] - r[a]));
    }
  }
  return {worst <= 1e-12,
          Format("1000 (p, r) pairs, max |E[r_hat] - r| = %.3g", worst)};
}

// --- 3 ---------------------------------------------------------------------

Outcome DelayCorrectness() {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> agents(2, 20);
  std::uniform_real_distribution<double> density(0.05, 0.4);
  int late = 0;
  int loose = 0;
  int checked = 0;
  for (int g = 0; g < 50; ++g) {
    const int n = agents(rng);
    const Topology topology = Topology::ErdosRenyi(n, density(rng), rng());
    const int dbar = topology.max_delay();
    MessageBus bus(topology);
    constexpr TimeStep kProbe = 3;
    // arrival[j][i] for the probe step's broadcasts.
    std::vector<std::vector<TimeStep>> arrival(n, std::vector<TimeStep>(n, 0));
    for (TimeStep t = 1; t <= kProbe + dbar; ++t) {
      for (AgentId j = 0; j < n; ++j) bus.Broadcast(j, t, j);
      bus.Step();
      if (t < kProbe) continue;
      for (AgentId j = 0; j < n; ++j) {
        for (AgentId i = 0; i < n; ++i) {
          if (i != j && arrival[j][i] == 0 && bus.Holds(i, j, kProbe)) {
            arrival[j][i] = t;
          }
        }
      }
    }
    for (AgentId i = 0; i < n; ++i) {
      const auto neighborhood = topology.in_neighborhood(i);
      if (neighborhood.empty()) continue;
      const TimeStep deadline = kProbe + topology.delay(i);
      TimeStep latest = 0;
      for (AgentId j : neighborhood) {
        ++checked;
        if (arrival[j][i] == 0 || arrival[j][i] > deadline) ++late;
        latest = std::max(latest, arrival[j][i]);
      }
      if (latest != deadline) ++loose;
    }
  }
  return {late == 0 && loose == 0 && checked > 0,
          Format("50 random digraphs, %d (neighbor, agent) pairs: %d late, "
                 "%d agents without a tight neighbor",
                 checked, late, loose)};
}

// --- shared instance for 7-11 ------------------------------------------------

// Three agents with three actions each. Every agent's best singleton covers
// the same hot spot, so uncoordinated play is far from optimal.
Scenario Instance(Topology topology, int horizon, std::uint64_t seed) {
  return testing::CoverageScenario(
      std::move(topology), {3, 3, 3}, 19,
      {{0, 9, 10, 11, 12}, {1, 13, 14}, {2},
       {3, 9, 10, 11, 12}, {4, 15, 16}, {5},
       {6, 9, 10, 11, 12}, {7, 17, 18}, {8}},
      horizon, seed);
}

constexpr int kHorizon = 20000;
constexpr int kSeeds = 20;

struct TopologyRuns {
  std::vector<BoundReport> reports;
  std::vector<CounterSummary> counters;
};

// Runs the shared instance over all seeds and reports on the last 10%.
TopologyRuns RunInstance(const Topology& topology) {
  TopologyRuns runs;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const Scenario s = Instance(topology, kHorizon, 1000 + seed);
    const Trace trace = Run(s);
    runs.reports.push_back(
        BoundGap(trace, s, kHorizon - kHorizon / 10 + 1, kHorizon));
    runs.counters.push_back(Counters(trace));
  }
  return runs;
}

// Per-seed slack of realized value over `rhs`, then mean >= -3 SE.
Outcome BoundCheck(const std::string& label, const TopologyRuns& runs,
                   const std::function<double(const BoundReport&)>& rhs) {
  std::vector<double> slack;
  std::vector<double> value;
  std::vector<double> bound;
  for (const BoundReport& r : runs.reports) {
    slack.push_back(r.mean_value - rhs(r));
    value.push_back(r.mean_value);
    bound.push_back(rhs(r));
  }
  const Stats s = Summarize(slack);
  return {s.mean >= -3.0 * s.se,
          Format("%s: kappa=%.3f OPT=%.3f mean f=%.4f bound=%.4f "
                 "slack=%.4f (3 SE=%.4f)",
                 label.c_str(), runs.reports[0].kappa,
                 runs.reports[0].mean_optimum, Summarize(value).mean,
                 Summarize(bound).mean, s.mean, 3.0 * s.se)};
}

// --- 4 ---------------------------------------------------------------------

Outcome EvaluationCounts(const std::vector<const TopologyRuns*>& shared) {
  int runs = 0;
  int bad = 0;
  auto check = [&](const CounterSummary& c) {
    ++runs;
    if (c.fed_cells == 0 || c.min_evals_per_fed_step != 2 ||
        c.max_evals_per_fed_step != 2 || c.max_evals_unfed != 0) {
      ++bad;
    }
  };
  for (const TopologyRuns* r : shared) {
    for (const CounterSummary& c : r->counters) check(c);
  }
  // Moving targets on random graphs.
  const SensorRegion sensors[] = {{0, 0, 3, 3}, {4, 0, 7, 3}, {0, 4, 3, 7},
                                  {4, 4, 7, 7}, {2, 2, 5, 5}, {0, 0, 7, 1},
                                  {0, 6, 7, 7}, {6, 0, 7, 7}};
  for (int k = 0; k < 10; ++k) {
    Scenario s;
    s.topology = Topology::ErdosRenyi(4, 0.3, k);
    const int sizes[] = {2, 2, 2, 2};
    s.ground = GroundSet::Contiguous(sizes);
    s.horizon = 500;
    s.objective = CoverageFunction::MovingTargets({8, 8, 6, 40u + k}, sensors,
                                                  s.horizon);
    s.scale = RewardScale{6.0};
    s.seed = k;
    s.Validate();
    check(Counters(Run(s)));
  }
  return {bad == 0, Format("%d runs, %d with a fed step not costing exactly 2 "
                           "evaluations",
                           runs, bad)};
}

// --- 5 ---------------------------------------------------------------------

Outcome NoCongestion() {
  std::vector<std::pair<std::string, Topology>> graphs = {
      {"ring6", Topology::Ring(6)},
      {"path6", Topology::Path(6)},
      {"ring12", Topology::Ring(12)},
      {"path12", Topology::Path(12)}};
  for (int k = 0; k < 4; ++k) {
    graphs.emplace_back("er" + std::to_string(k),
                        Topology::ErdosRenyi(8, 0.2, 500 + k));
  }
  constexpr int kT = 1000;
  int unsettled = 0;
  int max_load = 0;
  for (const auto& [name, topology] : graphs) {
    const int n = topology.num_agents();
    std::vector<int> sizes(n, 2);
    std::vector<std::vector<int>> covers;
    for (int a = 0; a < 2 * n; ++a) covers.push_back({a % 5, (a * 3) % 7});
    const Scenario s = testing::CoverageScenario(topology, sizes, 7, covers,
                                                 kT, 55);
    const Trace trace = Run(s);
    const int settle = std::max(1, 2 * topology.max_delay());
    for (AgentId i = 0; i < n; ++i) {
      const auto series = MessageSeries(trace, i);
      for (TimeStep t = settle; t <= kT; ++t) {
        if (series[t - 1] != series[settle - 1]) {
          ++unsettled;
          break;
        }
      }
      max_load = std::max(max_load, series[kT - 1]);
    }
  }
  return {unsettled == 0,
          Format("%zu ring/path/random graphs, T=1000: %d agents not constant "
                 "from step 2*dbar, max steady load %d",
                 graphs.size(), unsettled, max_load)};
}

// --- 6 ---------------------------------------------------------------------

// Static regret of a single delayed-feedback learner on a fixed reward table.
double SingleAgentRegret(int k, int d, int horizon, std::uint64_t seed) {
  std::vector<double> reward(k, 0.3);
  reward[k / 2] = 0.9;
  Learner learner(k, d, horizon);
  Rng rng(seed, 0);
  double realized = 0.0;
  std::map<TimeStep, int> pending;
  for (TimeStep t = 1; t <= horizon; ++t) {
    const int a = learner.Sample(t, rng);
    realized += reward[a];
    pending[t] = a;
    if (t - d >= 1) {
      learner.Feed(t - d, reward[pending[t - d]]);
      pending.erase(t - d);
    }
  }
  return 0.9 * horizon - realized;
}

Outcome SublinearRegret() {
  double worst = 0.0;
  std::string worst_case;
  int failures = 0;
  for (int k : {4, 16}) {
    for (int d : {0, 2, 8}) {
      for (int horizon : {2000, 4000, 8000}) {
        double single = 0.0;
        double twice = 0.0;
        for (int seed = 0; seed < kSeeds; ++seed) {
          single += SingleAgentRegret(k, d, horizon, 7000 + seed);
          twice += SingleAgentRegret(k, d, 2 * horizon, 9000 + seed);
        }
        const double ratio = twice / single;
        if (!(ratio <= 1.6)) ++failures;
        if (ratio > worst) {
          worst = ratio;
          worst_case = Format("k=%d d=%d T=%d", k, d, horizon);
        }
      }
    }
  }
  return {failures == 0,
          Format("18 (k, d, T) configs, max Reg(2T)/Reg(T) = %.3f at %s", worst,
                 worst_case.c_str())};
}

// --- 10 --------------------------------------------------------------------

Outcome InequalityChain() {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> agents(2, 4);
  std::uniform_int_distribution<int> actions(1, 3);
  std::uniform_real_distribution<double> density(0.2, 0.6);
  double worst_link = 0.0;
  double worst_identity = 0.0;
  int ratio_violations = 0;
  int ratio_checked = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = agents(rng);
    std::vector<int> sizes(n);
    int total = 0;
    for (int& s : sizes) total += s = actions(rng);
    const int m = 4 + k % 5;
    const Topology topology =
        Topology::ErdosRenyi(n, density(rng), rng());
    const Scenario s = testing::CoverageScenario(
        topology, sizes, m, oracle::RandomCovers(rng, total, m, density(rng)),
        200, k);
    std::vector<TimeStep> steps(s.horizon);
    std::iota(steps.begin(), steps.end(), 1);
    const ChainReport report = VerifyInequalityChain(Run(s), s, steps);
    for (const ChainLink& link : report.links) {
      if (!link.asserted) {
        ratio_checked += link.checked;
        if (link.min_slack < -kChainTolerance) ++ratio_violations;
        continue;
      }
      if (link.checked == 0) continue;
      if (link.identity) {
        worst_identity = std::max(worst_identity, link.max_abs_slack);
      } else {
        worst_link = std::min(worst_link, link.min_slack);
      }
    }
    worst_link = std::min(worst_link, report.regret_link_slack);
  }
  return {worst_link >= -1e-9 && worst_identity <= 1e-9,
          Format("50 instances x 200 steps: min inequality slack %.3g, max "
                 "identity |slack| %.3g (curvature ratio, reported only: %d "
                 "instances below 0 over %d tuples)",
                 worst_link, worst_identity, ratio_violations,
                 ratio_checked)};
}

// --- 11 --------------------------------------------------------------------

Outcome CoordinationBenefit(const TopologyRuns& edgeless,
                            const TopologyRuns& ring,
                            const TopologyRuns& complete) {
  auto values = [](const TopologyRuns& r) {
    std::vector<double> v;
    for (const BoundReport& b : r.reports) v.push_back(b.mean_value);
    return v;
  };
  const Stats e = Summarize(values(edgeless));
  const Stats r = Summarize(values(ring));
  const Stats c = Summarize(values(complete));
  const double se_er = std::hypot(e.se, r.se);
  const double se_rc = std::hypot(r.se, c.se);
  const bool pass =
      r.mean >= e.mean - 3.0 * se_er && c.mean >= r.mean - 3.0 * se_rc;
  return {pass, Format("mean f: edgeless %.4f, ring %.4f, complete %.4f "
                       "(3 SE %.4f, %.4f)",
                       e.mean, r.mean, c.mean, 3.0 * se_er, 3.0 * se_rc)};
}

// --- 12 --------------------------------------------------------------------

Outcome Determinism() {
  int identical = 0;
  int configs = 0;
  for (const char* preset : {"complete", "ring", "path", "er:0.4:7"}) {
    for (std::uint64_t seed : {0u, 42u}) {
      ++configs;
      const Scenario s =
          Instance(TopologyFromPreset(preset, 3), 2000, seed);
      std::ostringstream a;
      std::ostringstream b;
      WriteTraceCsv(Run(s), s.ground, a);
      WriteTraceCsv(Run(s), s.ground, b);
      if (a.str() == b.str()) ++identical;
    }
  }
  return {identical == configs,
          Format("%d/%d configs gave byte-identical trace CSVs", identical,
                 configs)};
}

int Main() {
  using Clock = std::chrono::steady_clock;
  std::map<int, std::pair<std::string, Outcome>> results;
  std::map<int, double> seconds;
  auto timed = [&](int id, const std::string& name, auto&& fn) {
    const auto start = Clock::now();
    results[id] = {name, fn()};
    seconds[id] =
        std::chrono::duration<double>(Clock::now() - start).count();
  };

  timed(1, "structural properties", StructuralProperties);
  timed(2, "estimator unbiasedness", EstimatorUnbiasedness);
  timed(3, "delay correctness", DelayCorrectness);

  TopologyRuns complete, edgeless, ring, path;
  const auto start = Clock::now();
  complete = RunInstance(Topology::Complete(3));
  edgeless = RunInstance(Topology::Edgeless(3));
  ring = RunInstance(Topology::Ring(3));
  path = RunInstance(Topology::Path(3));
  const double shared_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();

  timed(4, "two evaluations per fed step", [&] {
    return EvaluationCounts({&complete, &edgeless, &ring, &path});
  });
  timed(5, "no congestion", NoCongestion);
  timed(6, "sublinear regret", SublinearRegret);
  timed(7, "bound, fully centralized", [&] {
    return BoundCheck("complete", complete, [](const BoundReport& r) {
      return r.mean_optimum / (1.0 + r.kappa) - r.regret_per_step;
    });
  });
  timed(8, "bound, fully decentralized", [&] {
    if (edgeless.reports[0].kappa >= 1.0) {
      bool nonneg = true;
      for (const BoundReport& r : edgeless.reports) {
        nonneg = nonneg && r.mean_value >= 0.0;
      }
      return Outcome{nonneg, "kappa = 1, bound vacuous; realized f >= 0"};
    }
    return BoundCheck("edgeless", edgeless, [](const BoundReport& r) {
      return r.decentralized_rhs;
    });
  });
  timed(9, "bound, general topology", [&] {
    auto general = [](const BoundReport& r) {
      const double k = r.kappa;
      return r.mean_optimum / (1.0 + k) - k / (1.0 + k) * r.coin_sum -
             r.regret_per_step;
    };
    const Outcome a = BoundCheck("ring", ring, general);
    const Outcome b = BoundCheck("path", path, general);
    return Outcome{a.pass && b.pass, a.detail + "; " + b.detail};
  });
  timed(10, "inequality chain", InequalityChain);
  timed(11, "coordination benefit",
        [&] { return CoordinationBenefit(edgeless, ring, complete); });
  timed(12, "determinism", Determinism);

  int failed = 0;
  for (const auto& [id, entry] : results) {
    const auto& [name, outcome] = entry;
    if (!outcome.pass) ++failed;
    std::printf("%s  criterion %2d  %-30s %s (%.2f s)\n",
                outcome.pass ? "PASS" : "FAIL", id, name.c_str(),
                outcome.detail.c_str(), seconds[id]);
  }
  std::printf("shared instance runs (4 topologies x %d seeds, T=%d): %.2f s\n",
              kSeeds, kHorizon, shared_seconds);
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace dog

int main() { return dog::Main(); }
