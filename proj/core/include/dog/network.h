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

// Directed communication graphs, multi-hop in-neighbourhoods with their
// delays, and a lockstep store-and-forward message bus.

#ifndef DOG_NETWORK_H_
#define DOG_NETWORK_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dog/objective.h"

namespace dog {

// Directed channel j -> i: i can hear j.
struct Edge {
  AgentId from = 0;
  AgentId to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Topology {
 public:
  Topology() = default;

  // Throws InputError on self-loops or out-of-range endpoints. Duplicate
  // edges are ignored.
  static Topology Build(int num_agents, std::span<const Edge> edges);

  static Topology Complete(int num_agents);
  static Topology Edgeless(int num_agents);
  // i -> i+1 (mod n).
  static Topology Ring(int num_agents);
  // i -> i+1.
  static Topology Path(int num_agents);
  // Each ordered pair (j, i), j != i, is an edge with probability p.
  static Topology ErdosRenyi(int num_agents, double p, std::uint64_t seed);

  int num_agents() const { return num_agents_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const AgentId> out_neighbors(AgentId j) const;

  // N_i: every agent with a directed path to i, sorted, i excluded.
  std::span<const AgentId> in_neighborhood(AgentId i) const;

  // N_i^c = N \ ({i} + N_i), sorted.
  std::vector<AgentId> complement(AgentId i) const;

  bool Hears(AgentId i, AgentId j) const { return hops(j, i) > 0; }

  // Shortest directed hop count from -> to; 0 when equal, -1 if unreachable.
  int hops(AgentId from, AgentId to) const;

  // d_i: max hop count from any member of N_i to i; 0 when N_i is empty.
  int delay(AgentId i) const;
  // d-bar = max_i d_i.
  int max_delay() const { return max_delay_; }

 private:
  void Check(AgentId agent) const;

  int num_agents_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<AgentId>> out_;
  std::vector<std::vector<AgentId>> neighborhood_;
  std::vector<int> delay_;
  // hops_[to * n + from]
  std::vector<int> hops_;
  int max_delay_ = 0;
};

// Parses a preset ("complete", "edgeless", "ring", "path", "er:<p>:<seed>")
// for n agents. Throws InputError for unknown names.
Topology TopologyFromPreset(const std::string& preset, int num_agents);

struct Message {
  AgentId origin = 0;
  TimeStep step = 0;
  ActionId action = 0;
  int hops = 0;
};

// Per-agent counts for the most recent bus step.
struct BusCounters {
  // Copies arriving at the agent, duplicates included.
  int received = 0;
  // First-time deliveries (after dedup).
  int delivered = 0;
  // Copies the agent forwarded to out-neighbours.
  int relayed = 0;

  // Messages the agent actually processes; duplicates are dropped on
  // arrival and not counted.
  int handled() const { return delivered + relayed; }
};

// Flooding with per-agent dedup. A message broadcast at step s moves one hop
// per bus step: Step() number s + h hands it to agents h hops downstream.
// Seen-sets older than now() - max_delay() - 1 are pruned; by then every
// copy of those messages has landed.
class MessageBus {
 public:
  explicit MessageBus(Topology topology);

  const Topology& topology() const { return topology_; }

  // Index of the last completed bus step (0 before the first Step()).
  TimeStep now() const { return now_; }

  // Must be called during step s = now() + 1, before that step's Step().
  // Throws ProtocolError on a repeated (origin, s).
  void Broadcast(AgentId origin, TimeStep s, ActionId action);

  // Advances to now() + 1. Returns the first-time deliveries per agent.
  std::vector<std::vector<Message>> Step();

  const BusCounters& counters(AgentId agent) const;

  // True once agent has seen origin's action for step s (its own included).
  bool Holds(AgentId agent, AgentId origin, TimeStep s) const;

  // Decision steps whose full neighbourhood action set becomes usable at t:
  // {t - d_i} when N_i is non-empty (empty while t <= d_i), else {t}.
  std::vector<TimeStep> CompleteAt(AgentId agent, TimeStep t) const;

  // {(j, a_{j,s})} for j in N_i, sorted by j. Throws ProtocolError if any
  // neighbour's action has not arrived.
  std::vector<std::pair<AgentId, ActionId>> NeighborActions(AgentId agent,
                                                            TimeStep s) const;

 private:
  struct InFlight {
    AgentId receiver;
    Message message;
  };
  struct AgentState {
    // step -> origin -> action (or -1 when not yet seen)
    std::map<TimeStep, std::vector<ActionId>> seen;
    BusCounters counters;
  };

  bool MarkSeen(AgentId agent, const Message& message);
  void Forward(AgentId from, const Message& message, TimeStep arrival);

  Topology topology_;
  TimeStep now_ = 0;
  std::vector<AgentState> agents_;
  std::map<TimeStep, std::vector<InFlight>> in_flight_;
};

}  // namespace dog

#endif  // DOG_NETWORK_H_
