// Copyright 2026 The ibnptt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ibnptt/scenario/runner.h"

#include <algorithm>
#include <deque>
#include <future>
#include <thread>

#include "ibnptt/common/error.h"
#include "ibnptt/common/rng.h"
#include "ibnptt/netsim/event_queue.h"
#include "ibnptt/netsim/radio.h"
#include "ibnptt/orchestrator/assurance.h"

namespace ibnptt::scenario {

using netsim::Mode;
using netsim::Node;
using netsim::NodeId;
using netsim::NodeRole;

netsim::Topology BuildTopology(const ScenarioConfig& cfg) {
  netsim::Topology topo;
  Node enb;
  enb.name = "enb";
  enb.role = NodeRole::kEnb;
  enb.tx_power_dbm = cfg.enb_tx_dbm;
  topo.AddNode(enb);
  Node epc;
  epc.name = "epc";
  epc.role = NodeRole::kEpc;
  topo.AddNode(epc);
  Node server;
  server.name = "ptt-server";
  server.role = NodeRole::kPttServer;
  topo.AddNode(server);

  int number = 1;
  for (const TeamConfig& t : cfg.teams) {
    Node anchor;
    anchor.name = "ue-" + std::to_string(number++);
    anchor.team = t.id;
    anchor.is_anchor = true;
    anchor.position = t.anchor;
    anchor.tx_power_dbm = cfg.ue_tx_dbm;
    topo.AddNode(anchor);
    for (int k = 1; k < t.users; ++k) {
      Node ue;
      ue.name = "ue-" + std::to_string(number++);
      ue.team = t.id;
      ue.tx_power_dbm = cfg.ue_tx_dbm;
      ue.speed_mps = t.speed_mps;
      for (const netsim::Position& p : t.waypoints) {
        ue.waypoints.push_back({p.x, p.y - t.spacing_m * k});
      }
      topo.AddNode(ue);
    }
  }
  topo.Validate();
  return topo;
}

namespace {

int UeNumberOf(const Node& n) { return std::stoi(n.name.substr(3)); }

// Recent KPI samples per UE, fed incrementally from the run's store.
class KpiWindows {
 public:
  void Absorb(const ptt::KpiStore& store, Micros now) {
    for (; at_seen_ < store.at().size(); ++at_seen_) {
      const auto& s = store.at()[at_seen_];
      Push(at_[s.ue], {s.grant_t, at_seen_, s.at()});
    }
    for (; m2e_seen_ < store.m2e().size(); ++m2e_seen_) {
      const auto& s = store.m2e()[m2e_seen_];
      if (s.spoken_t > now) break;
      Push(m2e_[s.listener], {s.spoken_t, m2e_seen_, s.m2e()});
    }
  }

  orch::KpiWindow For(const std::vector<int>& ues) const {
    return {Collect(at_, ues), Collect(m2e_, ues)};
  }

 private:
  struct Entry {
    Micros t;
    std::size_t index;
    Micros value;
  };
  using PerUe = std::map<int, std::deque<Entry>>;

  static void Push(std::deque<Entry>& q, Entry e) {
    q.push_back(e);
    if (q.size() > orch::kAssuranceWindow) q.pop_front();
  }

  static std::vector<Micros> Collect(const PerUe& per_ue,
                                     const std::vector<int>& ues) {
    std::vector<Entry> all;
    for (int ue : ues) {
      auto it = per_ue.find(ue);
      if (it != per_ue.end()) all.insert(all.end(), it->second.begin(), it->second.end());
    }
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
      return a.index < b.index;
    });
    std::size_t from = all.size() > orch::kAssuranceWindow
                           ? all.size() - orch::kAssuranceWindow
                           : 0;
    std::vector<Micros> out;
    for (std::size_t i = from; i < all.size(); ++i) out.push_back(all[i].value);
    return out;
  }

  PerUe at_;
  PerUe m2e_;
  std::size_t at_seen_ = 0;
  std::size_t m2e_seen_ = 0;
};

class Run : public orch::NetworkController {
 public:
  Run(const ScenarioConfig& cfg, std::uint64_t seed, const RunOptions& options)
      : cfg_(cfg),
        options_(options),
        topology_(BuildTopology(cfg)),
        rng_(seed),
        enb_(topology_.FindRole(NodeRole::kEnb)),
        ptt_(events_, topology_, cfg.ptt, rng_, kpis_, Tags(cfg, seed)),
        orchestrator_(cfg.kb, topology_, *this, cfg.MakeLexicon(), cfg.strict_cnl) {
    report_.seed = seed;
    if (options_.floor_observer) ptt_.SetObserver(options_.floor_observer);
    if (options_.spurt_source) ptt_.SetSpurtSource(options_.spurt_source);
  }

  RunReport Execute() {
    const Timeline& tl = cfg_.timeline;
    for (const TimedIntent& i : cfg_.intents) {
      Micros at = tl.Resolve(i.instant);
      cnl::RawIntent raw{i.text, "provider", at};
      events_.Schedule(at, [this, raw] {
        orchestrator_.Submit(raw, events_.Now());
      });
    }
    events_.Schedule(tl.a + cfg_.mobility_step, [this] { MobilityStep(); });
    events_.Schedule(tl.a + cfg_.assurance_period, [this] { AssuranceTick(); });
    events_.RunUntil(tl.e);
    return Finish();
  }

  // NetworkController
  bool HasSession(std::string_view group) const override {
    return ptt_.HasSession(group);
  }

  void CreateSession(const orch::BearerConfig& bearer) override {
    ptt_.CreateSession(bearer.group_id, bearer.endpoints);
    ApplyModes(bearer);
    const int team = ptt_.session(bearer.group_id).team();
    const TeamConfig& tc = cfg_.team(team);
    std::vector<NodeId> talkers = bearer.endpoints;
    if (tc.talkers > 0 && static_cast<std::size_t>(tc.talkers) < talkers.size()) {
      talkers.resize(static_cast<std::size_t>(tc.talkers));
    }
    Micros start = std::max(events_.Now(), cfg_.timeline.Resolve(tc.call_start));
    std::string group = bearer.group_id;
    events_.Schedule(start, [this, group, talkers] {
      if (ptt_.HasSession(group)) ptt_.StartTraffic(group, talkers);
    });
  }

  void UpdateSession(const orch::BearerConfig& bearer) override {
    ApplyModes(bearer);
  }

  void RemoveSession(std::string_view group) override {
    ptt_.RemoveSession(group);
  }

 private:
  static ptt::RunTags Tags(const ScenarioConfig& cfg, std::uint64_t seed) {
    ptt::RunTags tags;
    tags.seed = seed;
    for (const TeamConfig& t : cfg.teams) tags.users_per_team[t.id] = t.users;
    return tags;
  }

  double Rx(const Node& ue) const {
    return netsim::ReceivedPower(ue, topology_.node(enb_), cfg_.radio).dbm;
  }

  void SwitchMode(Node& ue, Mode to) {
    ModeSwitch s;
    s.seed = report_.seed;
    s.t = events_.Now();
    s.team = ue.team.value_or(0);
    s.ue = UeNumberOf(ue);
    s.from = ue.mode;
    s.to = to;
    s.rx_dbm = Rx(ue);
    report_.switches.push_back(s);
    ue.mode = to;
    ptt_.NotifyModeChange(ue.id);
  }

  void ApplyModes(const orch::BearerConfig& bearer) {
    for (std::size_t i = 0; i < bearer.endpoints.size(); ++i) {
      Node& ue = topology_.node(bearer.endpoints[i]);
      if (ue.mode != bearer.modes[i]) SwitchMode(ue, bearer.modes[i]);
    }
    if (ptt_.HasSession(bearer.group_id)) ptt_.RefreshArbitration(bearer.group_id);
  }

  void MobilityStep() {
    const Micros now = events_.Now();
    for (const Node& n : topology_.nodes()) {
      Node& node = topology_.node(n.id);
      if (node.role == NodeRole::kUe) netsim::StepMobility(node, cfg_.mobility_step);
    }
    for (const Node& n : topology_.nodes()) {
      if (n.role != NodeRole::kUe || n.is_anchor || !n.team ||
          !cfg_.team(*n.team).relay_fallback) {
        continue;
      }
      Node& ue = topology_.node(n.id);
      if (options_.record_power_trace) {
        report_.power_trace.push_back({now, UeNumberOf(ue), Rx(ue)});
      }
      Mode next = netsim::EvaluateModeSwitch(ue, topology_.node(enb_), cfg_.radio, ue.mode);
      if (next == ue.mode) continue;
      SwitchMode(ue, next);
      const std::string team = "team" + std::to_string(*ue.team);
      std::string text = next == Mode::kRelay
                             ? ue.name + " reconnect ptt-group-call via " + team + "-anchor"
                             : ue.name + " reconnect ptt-group-call with mode on-network";
      orchestrator_.Submit({text, "provider", now}, now);
    }
    events_.ScheduleIn(cfg_.mobility_step, [this] { MobilityStep(); });
  }

  void AssuranceTick() {
    const Micros now = events_.Now();
    windows_.Absorb(kpis_, now);
    for (const orch::DeployedIntent& snapshot : orchestrator_.deployed()) {
      if (!snapshot.live()) continue;
      orch::DeployedIntent& d = orchestrator_.intent(snapshot.handle);
      std::vector<int> ues;
      for (NodeId e : d.bearer.endpoints) ues.push_back(UeNumberOf(topology_.node(e)));
      const kb::ServiceProfile& profile = cfg_.kb.LookupProfile(d.bearer.service);
      orch::AssuranceAction action =
          orch::Assure(d, windows_.For(ues), profile, topology_, cfg_.radio);
      if (action.kind == orch::AssuranceKind::kReorchestrate) {
        orchestrator_.Reorchestrate(d.handle, action.mode, action.endpoints);
      }
      AssuranceRecord rec;
      rec.seed = report_.seed;
      rec.t = now;
      rec.handle = d.handle;
      rec.group = d.bearer.group_id;
      rec.action = orch::AssuranceKindName(action.kind);
      rec.status = orch::IntentStatusName(orchestrator_.intent(d.handle).status);
      rec.at_p95_ms = action.at_p95_ms;
      rec.m2e_p95_ms = action.m2e_p95_ms;
      report_.assurance.push_back(rec);
    }
    events_.ScheduleIn(cfg_.assurance_period, [this] { AssuranceTick(); });
  }

  RunReport Finish() {
    report_.at = kpis_.at();
    report_.m2e = kpis_.m2e();
    report_.timings = orchestrator_.timings();
    report_.rejections = orchestrator_.rejections();
    for (const Node& n : topology_.nodes()) {
      if (n.role != NodeRole::kUe) continue;
      const int number = UeNumberOf(n);
      report_.final_modes[number] = n.mode;
      report_.ue_team[number] = n.team.value_or(0);
      report_.ue_anchor[number] = n.is_anchor;
    }
    return std::move(report_);
  }

  const ScenarioConfig& cfg_;
  const RunOptions& options_;
  netsim::Topology topology_;
  netsim::EventQueue events_;
  Rng rng_;
  NodeId enb_;
  ptt::KpiStore kpis_;
  ptt::PttService ptt_;
  orch::Orchestrator orchestrator_;
  KpiWindows windows_;
  RunReport report_;
};

}  // namespace

RunReport RunScenario(const ScenarioConfig& cfg, std::uint64_t seed,
                      const RunOptions& options) {
  cfg.Validate();
  Run run(cfg, seed, options);
  return run.Execute();
}

RunReport Pool(std::span<const RunReport> runs) {
  RunReport pooled;
  if (!runs.empty()) pooled.seed = runs.front().seed;
  for (const RunReport& r : runs) {
    auto append = [](auto& into, const auto& from) {
      into.insert(into.end(), from.begin(), from.end());
    };
    append(pooled.at, r.at);
    append(pooled.m2e, r.m2e);
    append(pooled.timings, r.timings);
    append(pooled.rejections, r.rejections);
    append(pooled.switches, r.switches);
    append(pooled.assurance, r.assurance);
    append(pooled.power_trace, r.power_trace);
    pooled.ue_team.insert(r.ue_team.begin(), r.ue_team.end());
    pooled.ue_anchor.insert(r.ue_anchor.begin(), r.ue_anchor.end());
  }
  return pooled;
}

BatchResult RunBatch(const ScenarioConfig& cfg, bool concurrent) {
  cfg.Validate();
  BatchResult result;
  result.runs.resize(static_cast<std::size_t>(cfg.runs));
  auto seed_of = [&](std::size_t i) { return cfg.base_seed + i; };
  if (!concurrent) {
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
      result.runs[i] = RunScenario(cfg, seed_of(i));
    }
  } else {
    const std::size_t workers =
        std::max<std::size_t>(1, std::thread::hardware_concurrency());
    for (std::size_t first = 0; first < result.runs.size(); first += workers) {
      std::vector<std::future<RunReport>> batch;
      const std::size_t last = std::min(result.runs.size(), first + workers);
      for (std::size_t i = first; i < last; ++i) {
        batch.push_back(std::async(std::launch::async,
                                   [&cfg, s = seed_of(i)] { return RunScenario(cfg, s); }));
      }
      for (std::size_t i = first; i < last; ++i) {
        result.runs[i] = batch[i - first].get();
      }
    }
  }
  result.aggregate = Pool(result.runs);
  return result;
}

}  // namespace ibnptt::scenario
