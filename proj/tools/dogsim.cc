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

// dogsim: command-line front end for the simulator.
//
//   dogsim run     --scenario FILE [--topology P] [--seed S] [--horizon T]
//                  --out trace.csv [--summary summary.json]
//   dogsim oracle  --scenario FILE [--t STEP] [--horizon T]
//   dogsim report  --scenario FILE --trace trace.csv [--topology P]
//                  [--out report.csv]
//   dogsim sweep   --scenario FILE --topologies P1,P2 --seeds N
//                  [--horizon T] [--out sweep.csv]

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dog/baselines.h"
#include "dog/engine.h"
#include "dog/errors.h"
#include "dog/io.h"
#include "dog/metrics.h"

namespace dog {
namespace {

struct Common {
  std::string scenario;
  std::string topology;
  std::optional<std::uint64_t> seed;
  std::optional<int> horizon;
};

Topology ResolveTopology(const ScenarioFile& file, const std::string& flag) {
  if (!flag.empty()) return LoadTopology(flag, file.num_agents);
  if (auto declared = file.DeclaredTopology()) return *declared;
  throw InputError("no topology: pass --topology or declare one in the "
                   "scenario file");
}

Scenario Resolve(const Common& c, const ScenarioFile& file) {
  const int horizon = c.horizon.value_or(file.horizon.value_or(0));
  if (horizon < 1) {
    throw InputError("no horizon: pass --horizon or set it in the file");
  }
  return MakeScenario(file, ResolveTopology(file, c.topology), horizon,
                      c.seed.value_or(file.seed.value_or(0)));
}

std::string Names(const JointAction& joint, const GroundSet& ground) {
  std::string out;
  for (ActionId a : joint.actions) {
    if (!out.empty()) out += ' ';
    out += ground.name(a);
  }
  return out;
}

// Last 10% of the horizon, at least one step.
std::pair<TimeStep, TimeStep> TailWindow(int horizon) {
  return {horizon - std::max(1, horizon / 10) + 1, horizon};
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

int RunCommand(const Common& c, const std::string& out_path,
               const std::string& summary_path) {
  const ScenarioFile file = LoadScenarioFile(c.scenario);
  const Scenario s = Resolve(c, file);
  const Trace trace = Run(s);
  {
    std::ofstream out = OpenOut(out_path);
    WriteTraceCsv(trace, s.ground, out);
  }

  nlohmann::json summary;
  double total = 0.0;
  for (TimeStep t = 1; t <= s.horizon; ++t) total += trace.value(t);
  summary["horizon"] = s.horizon;
  summary["seed"] = s.seed;
  summary["mean_objective"] = total / s.horizon;
  std::vector<double> regret;
  for (AgentId i = 0; i < s.ground.num_agents(); ++i) {
    regret.push_back(StaticRegret(trace, i, s, 1, s.horizon));
  }
  summary["regret_per_agent"] = regret;
  const CounterSummary counters = Counters(trace);
  summary["evaluations_per_fed_step"] = {counters.min_evals_per_fed_step,
                                         counters.max_evals_per_fed_step};
  summary["max_messages_per_agent_step"] = counters.max_messages_per_agent_step;
  const auto [first, last] = TailWindow(s.horizon);
  try {
    summary["bound"] =
        nlohmann::json::parse(BoundReportJson(BoundGap(trace, s, first, last),
                                              s.ground));
  } catch (const CapacityError& e) {
    summary["bound"] = nullptr;
    std::cerr << "bound report skipped: " << e.what() << '\n';
  }
  const std::string text = summary.dump(2);
  if (summary_path.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out = OpenOut(summary_path);
    out << text << '\n';
  }
  return 0;
}

int OracleCommand(const Common& c, TimeStep t) {
  const ScenarioFile file = LoadScenarioFile(c.scenario);
  const int horizon = c.horizon.value_or(file.horizon.value_or(t));
  const auto f = file.Objective(horizon);
  const GroundSet ground = file.Ground();
  std::vector<AgentId> order(ground.num_agents());
  std::iota(order.begin(), order.end(), 0);
  const JointAction opt = BruteForceOptimal(*f, ground, t, t);
  const JointAction sg = SequentialGreedy(*f, t, ground, order);
  const JointAction iso = IsolatedGreedy(*f, t, ground);
  std::printf("t=%d curvature=%s\n", t, FormatNumber(Curvature(*f, t)).c_str());
  std::printf("optimal    %-10s %s\n", FormatNumber(opt.value).c_str(),
              Names(opt, ground).c_str());
  std::printf("greedy     %-10s %s\n", FormatNumber(sg.value).c_str(),
              Names(sg, ground).c_str());
  std::printf("isolated   %-10s %s\n", FormatNumber(iso.value).c_str(),
              Names(iso, ground).c_str());
  return 0;
}

int ReportCommand(const Common& c, const std::string& trace_path,
                  const std::string& out_path) {
  const ScenarioFile file = LoadScenarioFile(c.scenario);
  std::ifstream in(trace_path);
  if (!in) throw InputError("cannot open trace '" + trace_path + "'");
  // The horizon comes from the trace itself.
  Common bound = c;
  {
    std::ifstream probe(trace_path);
    std::string line;
    TimeStep last = 0;
    std::getline(probe, line);
    while (std::getline(probe, line)) {
      if (!line.empty()) last = std::max(last, std::stoi(line));
    }
    bound.horizon = last;
  }
  const Scenario s = Resolve(bound, file);
  const Trace trace = ReadTraceCsv(in, s);
  const auto [first, last] = TailWindow(trace.horizon());
  const BoundReport r = BoundGap(trace, s, first, last);
  std::vector<TimeStep> steps(trace.horizon());
  std::iota(steps.begin(), steps.end(), 1);
  const ChainReport chain = VerifyInequalityChain(trace, s, steps);

  std::ofstream file_out;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file_out = OpenOut(out_path);
    out = &file_out;
  }
  *out << "quantity,value\n";
  auto row = [&](const std::string& name, double v) {
    *out << name << ',' << FormatNumber(v) << '\n';
  };
  row("window_first", r.first);
  row("window_last", r.last);
  row("mean_objective", r.mean_value);
  row("mean_optimum", r.mean_optimum);
  row("curvature", r.kappa);
  row("coin_sum", r.coin_sum);
  for (std::size_t i = 0; i < r.regret.size(); ++i) {
    row("regret_agent_" + std::to_string(i), r.regret[i]);
    row("coin_agent_" + std::to_string(i), r.mean_coin[i]);
  }
  row("regret_per_step", r.regret_per_step);
  row("bound_rhs", r.rhs);
  row("bound_slack", r.slack);
  row("centralized_rhs", r.centralized_rhs);
  row("decentralized_rhs", r.decentralized_rhs);
  for (const ChainLink& link : chain.links) {
    row("chain_" + link.name + "_min_slack", link.min_slack);
  }
  row("chain_regret_link_slack", chain.regret_link_slack);

  const bool bound_ok = r.slack >= 0.0;
  std::cerr << (bound_ok ? "PASS" : "FAIL") << "  bound slack "
            << FormatNumber(r.slack) << '\n';
  for (const ChainLink& link : chain.links) {
    const bool ok = link.Holds(kChainTolerance);
    std::cerr << (ok ? "PASS" : (link.asserted ? "FAIL" : "NOTE")) << "  "
              << link.name << " min slack " << FormatNumber(link.min_slack)
              << (link.asserted ? "" : " (reported only)") << '\n';
  }
  return bound_ok && chain.all_hold ? 0 : 1;
}

int SweepCommand(const Common& c, const std::vector<std::string>& topologies,
                 int seeds, const std::string& out_path) {
  const ScenarioFile file = LoadScenarioFile(c.scenario);
  std::ofstream file_out;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file_out = OpenOut(out_path);
    out = &file_out;
  }
  *out << "topology,seed,mean_f,optimum,kappa,coin_sum,regret_per_step,"
          "bound_rhs,bound_slack\n";
  const std::uint64_t base = c.seed.value_or(file.seed.value_or(0));
  for (const std::string& preset : topologies) {
    std::vector<double> values;
    for (int k = 0; k < seeds; ++k) {
      Common one = c;
      one.topology = preset;
      one.seed = base + k;
      const Scenario s = Resolve(one, file);
      const auto [first, last] = TailWindow(s.horizon);
      const BoundReport r = BoundGap(Run(s), s, first, last);
      values.push_back(r.mean_value);
      *out << preset << ',' << s.seed << ',' << FormatNumber(r.mean_value)
           << ',' << FormatNumber(r.mean_optimum) << ','
           << FormatNumber(r.kappa) << ',' << FormatNumber(r.coin_sum) << ','
           << FormatNumber(r.regret_per_step) << ',' << FormatNumber(r.rhs)
           << ',' << FormatNumber(r.slack) << '\n';
    }
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    const double se = n > 1 ? std::sqrt(sq / (n - 1) / n) : 0.0;
    std::fprintf(stderr, "%-12s mean f %.4f  SE %.4f\n", preset.c_str(), mean,
                 se);
  }
  return 0;
}

void AddCommon(CLI::App* app, Common& c, bool topology) {
  app->add_option("--scenario", c.scenario, "Scenario file")
      ->required()
      ->check(CLI::ExistingFile);
  if (topology) {
    app->add_option("--topology", c.topology,
                    "Preset (complete, edgeless, ring, path, er:<p>:<seed>) "
                    "or topology file");
  }
  app->add_option("--seed", c.seed, "Global seed");
  app->add_option("--horizon", c.horizon, "Number of timesteps")
      ->check(CLI::PositiveNumber);
}

}  // namespace
}  // namespace dog

int main(int argc, char** argv) {
  CLI::App app{"Distributed online greedy simulator"};
  app.require_subcommand(1);

  dog::Common run_opts;
  std::string run_out;
  std::string run_summary;
  auto* run = app.add_subcommand("run", "Simulate and write a trace CSV");
  dog::AddCommon(run, run_opts, true);
  run->add_option("--out", run_out, "Trace CSV path")->required();
  run->add_option("--summary", run_summary, "Summary JSON path (default stdout)");

  dog::Common oracle_opts;
  int oracle_t = 1;
  auto* oracle =
      app.add_subcommand("oracle", "Optimal, greedy and isolated joint actions");
  dog::AddCommon(oracle, oracle_opts, false);
  oracle->add_option("--t", oracle_t, "Timestep to evaluate")
      ->check(CLI::PositiveNumber);

  dog::Common report_opts;
  std::string report_trace;
  std::string report_out;
  auto* report = app.add_subcommand(
      "report", "Bound report and inequality-chain audit for a trace");
  dog::AddCommon(report, report_opts, true);
  report->add_option("--trace", report_trace, "Trace CSV from 'run'")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "Report CSV path (default stdout)");

  dog::Common sweep_opts;
  std::vector<std::string> sweep_topologies = {"edgeless", "ring", "complete"};
  int sweep_seeds = 20;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Seed grid over topologies");
  dog::AddCommon(sweep, sweep_opts, false);
  sweep->add_option("--topologies", sweep_topologies, "Presets or files")
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_seeds, "Seeds per topology")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_out, "Sweep CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return dog::RunCommand(run_opts, run_out, run_summary);
    if (*oracle) return dog::OracleCommand(oracle_opts, oracle_t);
    if (*report) return dog::ReportCommand(report_opts, report_trace, report_out);
    if (*sweep) {
      return dog::SweepCommand(sweep_opts, sweep_topologies, sweep_seeds,
                               sweep_out);
    }
  } catch (const dog::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
