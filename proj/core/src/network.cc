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

#include "dog/network.h"

#include <algorithm>
#include <deque>
#include <sstream>
#include <string>

#include "dog/errors.h"
#include "dog/rng.h"

namespace dog {

// -- Topology -----------------------------------------------------------------

Topology Topology::Build(int num_agents, std::span<const Edge> edges) {
  if (num_agents < 1) throw InputError("need at least one agent");
  Topology topo;
  topo.num_agents_ = num_agents;
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= num_agents || e.to < 0 || e.to >= num_agents) {
      throw InputError("edge " + std::to_string(e.from) + "->" +
                       std::to_string(e.to) + " has an out-of-range endpoint");
    }
    if (e.from == e.to) {
      throw InputError("self-loop on agent " + std::to_string(e.from));
    }
    topo.edges_.push_back(e);
  }
  std::sort(topo.edges_.begin(), topo.edges_.end());
  topo.edges_.erase(std::unique(topo.edges_.begin(), topo.edges_.end()),
                    topo.edges_.end());

  const int n = num_agents;
  topo.out_.assign(n, {});
  std::vector<std::vector<AgentId>> in(n);
  for (const Edge& e : topo.edges_) {
    topo.out_[e.from].push_back(e.to);
    in[e.to].push_back(e.from);
  }

  // BFS on reversed edges from every agent gives hop counts into it.
  topo.hops_.assign(static_cast<std::size_t>(n) * n, -1);
  topo.neighborhood_.assign(n, {});
  topo.delay_.assign(n, 0);
  std::deque<AgentId> queue;
  for (AgentId i = 0; i < n; ++i) {
    int* dist = &topo.hops_[static_cast<std::size_t>(i) * n];
    dist[i] = 0;
    queue.assign(1, i);
    while (!queue.empty()) {
      const AgentId u = queue.front();
      queue.pop_front();
      for (AgentId j : in[u]) {
        if (dist[j] == -1) {
          dist[j] = dist[u] + 1;
          queue.push_back(j);
        }
      }
    }
    for (AgentId j = 0; j < n; ++j) {
      if (j != i && dist[j] > 0) {
        topo.neighborhood_[i].push_back(j);
        topo.delay_[i] = std::max(topo.delay_[i], dist[j]);
      }
    }
    topo.max_delay_ = std::max(topo.max_delay_, topo.delay_[i]);
  }
  return topo;
}

Topology Topology::Complete(int num_agents) {
  std::vector<Edge> edges;
  for (AgentId j = 0; j < num_agents; ++j) {
    for (AgentId i = 0; i < num_agents; ++i) {
      if (i != j) edges.push_back({j, i});
    }
  }
  return Build(num_agents, edges);
}

Topology Topology::Edgeless(int num_agents) { return Build(num_agents, {}); }

Topology Topology::Ring(int num_agents) {
  std::vector<Edge> edges;
  if (num_agents > 1) {
    for (AgentId j = 0; j < num_agents; ++j) {
      edges.push_back({j, (j + 1) % num_agents});
    }
  }
  return Build(num_agents, edges);
}

Topology Topology::Path(int num_agents) {
  std::vector<Edge> edges;
  for (AgentId j = 0; j + 1 < num_agents; ++j) edges.push_back({j, j + 1});
  return Build(num_agents, edges);
}

Topology Topology::ErdosRenyi(int num_agents, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability outside [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (AgentId j = 0; j < num_agents; ++j) {
    for (AgentId i = 0; i < num_agents; ++i) {
      if (i != j && rng.Bernoulli(p)) edges.push_back({j, i});
    }
  }
  return Build(num_agents, edges);
}

void Topology::Check(AgentId agent) const {
  if (agent < 0 || agent >= num_agents_) {
    throw InputError("unknown agent " + std::to_string(agent));
  }
}

std::span<const AgentId> Topology::out_neighbors(AgentId j) const {
  Check(j);
  return out_[j];
}

std::span<const AgentId> Topology::in_neighborhood(AgentId i) const {
  Check(i);
  return neighborhood_[i];
}

std::vector<AgentId> Topology::complement(AgentId i) const {
  Check(i);
  std::vector<AgentId> out;
  for (AgentId j = 0; j < num_agents_; ++j) {
    if (j != i && !Hears(i, j)) out.push_back(j);
  }
  return out;
}

int Topology::hops(AgentId from, AgentId to) const {
  Check(from);
  Check(to);
  return hops_[static_cast<std::size_t>(to) * num_agents_ + from];
}

int Topology::delay(AgentId i) const {
  Check(i);
  return delay_[i];
}

Topology TopologyFromPreset(const std::string& preset, int num_agents) {
  if (preset == "complete") return Topology::Complete(num_agents);
  if (preset == "edgeless") return Topology::Edgeless(num_agents);
  if (preset == "ring") return Topology::Ring(num_agents);
  if (preset == "path") return Topology::Path(num_agents);
  if (preset.rfind("er:", 0) == 0) {
    std::istringstream in(preset.substr(3));
    double p = 0.0;
    char sep = 0;
    std::uint64_t seed = 0;
    if (!(in >> p >> sep >> seed) || sep != ':') {
      throw InputError("expected er:<p>:<seed>, got '" + preset + "'");
    }
    return Topology::ErdosRenyi(num_agents, p, seed);
  }
  throw InputError("unknown topology preset '" + preset + "'");
}

// -- MessageBus ---------------------------------------------------------------

MessageBus::MessageBus(Topology topology)
    : topology_(std::move(topology)), agents_(topology_.num_agents()) {}

bool MessageBus::MarkSeen(AgentId agent, const Message& message) {
  auto& slot = agents_[agent].seen[message.step];
  if (slot.empty()) slot.assign(topology_.num_agents(), -1);
  if (slot[message.origin] != -1) return false;
  slot[message.origin] = message.action;
  return true;
}

void MessageBus::Forward(AgentId from, const Message& message,
                         TimeStep arrival) {
  auto& batch = in_flight_[arrival];
  for (AgentId to : topology_.out_neighbors(from)) {
    Message copy = message;
    copy.hops += 1;
    batch.push_back({to, copy});
  }
}

void MessageBus::Broadcast(AgentId origin, TimeStep s, ActionId action) {
  if (origin < 0 || origin >= topology_.num_agents()) {
    throw InputError("unknown agent " + std::to_string(origin));
  }
  if (s != now_ + 1) {
    throw ProtocolError("broadcast for step " + std::to_string(s) +
                        " during step " + std::to_string(now_ + 1));
  }
  const Message message{origin, s, action, 0};
  if (!MarkSeen(origin, message)) {
    throw ProtocolError("agent " + std::to_string(origin) +
                        " already broadcast for step " + std::to_string(s));
  }
  // Departs at the end of step s; first hop lands during step s + 1.
  Forward(origin, message, s + 1);
}

std::vector<std::vector<Message>> MessageBus::Step() {
  ++now_;
  std::vector<std::vector<Message>> delivered(topology_.num_agents());
  for (auto& state : agents_) state.counters = BusCounters{};

  auto node = in_flight_.extract(now_);
  if (!node.empty()) {
    for (const InFlight& flight : node.mapped()) {
      AgentState& state = agents_[flight.receiver];
      ++state.counters.received;
      if (!MarkSeen(flight.receiver, flight.message)) continue;
      if (flight.message.hops > topology_.max_delay()) {
        throw InvariantError("message delivered after more than d-bar hops");
      }
      ++state.counters.delivered;
      delivered[flight.receiver].push_back(flight.message);
      const auto outs = topology_.out_neighbors(flight.receiver);
      state.counters.relayed += static_cast<int>(outs.size());
      Forward(flight.receiver, flight.message, now_ + 1);
    }
  }

  const TimeStep horizon_of_copies = now_ - topology_.max_delay() - 1;
  for (auto& state : agents_) {
    state.seen.erase(state.seen.begin(),
                     state.seen.lower_bound(horizon_of_copies));
  }
  return delivered;
}

const BusCounters& MessageBus::counters(AgentId agent) const {
  if (agent < 0 || agent >= topology_.num_agents()) {
    throw InputError("unknown agent " + std::to_string(agent));
  }
  return agents_[agent].counters;
}

bool MessageBus::Holds(AgentId agent, AgentId origin, TimeStep s) const {
  if (agent < 0 || agent >= topology_.num_agents() || origin < 0 ||
      origin >= topology_.num_agents()) {
    throw InputError("unknown agent");
  }
  const auto& seen = agents_[agent].seen;
  auto it = seen.find(s);
  return it != seen.end() && it->second[origin] != -1;
}

std::vector<TimeStep> MessageBus::CompleteAt(AgentId agent, TimeStep t) const {
  if (t > now_) {
    throw ProtocolError("bus has not been stepped through " + std::to_string(t));
  }
  if (topology_.in_neighborhood(agent).empty()) return {t};
  const TimeStep s = t - topology_.delay(agent);
  if (s < 1) return {};
  return {s};
}

std::vector<std::pair<AgentId, ActionId>> MessageBus::NeighborActions(
    AgentId agent, TimeStep s) const {
  std::vector<std::pair<AgentId, ActionId>> out;
  const auto neighborhood = topology_.in_neighborhood(agent);
  if (neighborhood.empty()) return out;
  const auto& seen = agents_[agent].seen;
  auto it = seen.find(s);
  for (AgentId j : neighborhood) {
    if (it == seen.end() || it->second[j] == -1) {
      throw ProtocolError("agent " + std::to_string(agent) +
                          " is missing the step-" + std::to_string(s) +
                          " action of agent " + std::to_string(j));
    }
    out.emplace_back(j, it->second[j]);
  }
  return out;
}

}  // namespace dog
