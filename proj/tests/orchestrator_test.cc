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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "ibnptt/common/error.h"
#include "ibnptt/orchestrator/assurance.h"
#include "ibnptt/orchestrator/orchestrator.h"
#include "support/generators.h"

namespace ibnptt::orch {
namespace {

using netsim::Mode;
using netsim::NodeId;

class FakeSim : public NetworkController {
 public:
  bool HasSession(std::string_view group) const override {
    return sessions.count(std::string(group)) > 0;
  }
  void CreateSession(const BearerConfig& b) override { sessions[b.group_id] = b; }
  void UpdateSession(const BearerConfig& b) override { updates.push_back(b); }
  void RemoveSession(std::string_view group) override {
    sessions.erase(std::string(group));
  }
  std::map<std::string, BearerConfig> sessions;
  std::vector<BearerConfig> updates;
};

// Three teams of five; ue-1, ue-6, ue-11 anchor. eNB at the origin.
netsim::Topology MakeTopology() {
  netsim::Topology topo;
  netsim::Node enb;
  enb.role = netsim::NodeRole::kEnb;
  enb.tx_power_dbm = 30.0;
  topo.AddNode(enb);
  netsim::Node epc;
  epc.role = netsim::NodeRole::kEpc;
  topo.AddNode(epc);
  netsim::Node srv;
  srv.role = netsim::NodeRole::kPttServer;
  topo.AddNode(srv);
  int n = 1;
  for (int team = 1; team <= 3; ++team) {
    for (int k = 0; k < 5; ++k, ++n) {
      netsim::Node ue;
      ue.name = "ue-" + std::to_string(n);
      ue.team = team;
      ue.is_anchor = k == 0;
      ue.position = {100.0 * team, 10.0 * k};
      topo.AddNode(ue);
    }
  }
  return topo;
}

cnl::IntentAst Parse(const std::string& text, const std::string& source = "provider") {
  return cnl::ParseIntent(cnl::Tokenize({text, source}), cnl::Lexicon::Default(),
                          {false, source});
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIoError;
}

TEST(Translate, TeamExpandsToAllMembers) {
  auto topo = MakeTopology();
  auto kb = kb::KnowledgeBase::Default();
  auto t = Translate(Parse("team1 connect ptt-group-call between team1-members"),
                     kb, topo);
  EXPECT_EQ(t.endpoints.size(), 5u);
  EXPECT_EQ(t.endpoints.front(), topo.FindByName("ue-1"));
  EXPECT_EQ(t.preferred_mode, PreferredMode::kAuto);
  EXPECT_EQ(t.group_id, "team1");
  EXPECT_EQ(t.subscriber, "team1");
  EXPECT_EQ(t.profile.name, "ptt-group-call");
}

TEST(Translate, ViaMeansRelay) {
  auto topo = MakeTopology();
  auto kb = kb::KnowledgeBase::Default();
  auto t = Translate(Parse("ue-3 reconnect ptt-group-call via team1-anchor", "ue-3"),
                     kb, topo);
  EXPECT_EQ(t.preferred_mode, PreferredMode::kRelay);
  EXPECT_EQ(t.kind, cnl::IntentKind::kReconnection);
  ASSERT_EQ(t.endpoints.size(), 1u);
  EXPECT_EQ(t.endpoints[0], topo.FindByName("ue-3"));
  EXPECT_EQ(t.group_id, "team1");
}

TEST(Translate, ModeQualifierAndPriority) {
  auto topo = MakeTopology();
  auto kb = kb::KnowledgeBase::Default();
  auto t = Translate(
      Parse("team2 reconnect ptt-group-call between team2-members with mode d2d"),
      kb, topo);
  EXPECT_EQ(t.preferred_mode, PreferredMode::kOffNetworkD2D);
  auto p = Translate(Parse("provider modify ptt-group-call for team3 with priority 2"),
                     kb, topo);
  EXPECT_EQ(p.priority, 2);
  EXPECT_EQ(p.group_id, "team3");
}

TEST(Translate, Errors) {
  auto topo = MakeTopology();
  auto kb = kb::KnowledgeBase::Default();
  EXPECT_EQ(CodeOf([&] {
              Translate(Parse("provider connect ptt-group-call to ue-999"), kb, topo);
            }),
            ErrorCode::kUnresolvableEndpoint);
  EXPECT_EQ(CodeOf([&] {
              Translate(Parse("provider connect ptt-group-call to team9"), kb, topo);
            }),
            ErrorCode::kUnresolvableEndpoint);
  auto ast = Parse("provider connect ptt-group-call to ue-1");
  ast.service = "hologram";
  EXPECT_EQ(CodeOf([&] { Translate(ast, kb, topo); }), ErrorCode::kUnknownService);
  ast = Parse("provider connect ptt-group-call to ue-1 with priority 12");
  EXPECT_EQ(CodeOf([&] { Translate(ast, kb, topo); }), ErrorCode::kParseError);
}

DeployedIntent LiveIntent(int handle, const std::string& group,
                          std::vector<int> ids, Mode mode = Mode::kOnNetwork) {
  DeployedIntent d;
  d.handle = handle;
  d.bearer.group_id = group;
  d.tmpl.group_id = group;
  for (int id : ids) {
    d.bearer.endpoints.push_back(NodeId{id});
    d.bearer.modes.push_back(mode);
  }
  return d;
}

DeploymentTemplate GroupTemplate(const kb::KnowledgeBase& kb,
                                 const std::string& group, std::vector<int> ids) {
  DeploymentTemplate t;
  t.profile = kb.LookupProfile("ptt-group-call");
  t.subscriber = "team1";
  t.group_id = group;
  for (int id : ids) t.endpoints.push_back(NodeId{id});
  return t;
}

TEST(Validate, CapacityExceeded) {
  auto kb = kb::KnowledgeBase::Default();
  kb.SetCapabilities({10, true, true});
  std::vector<DeployedIntent> active = {
      LiveIntent(1, "a", {3, 4, 5, 6, 7, 8, 9, 10})};
  auto t = GroupTemplate(kb, "b", {20, 21, 22, 23, 24});
  EXPECT_EQ(Validate(t, kb, active).reason, RejectReason::kInsufficientResources);
  t.endpoints.resize(2);
  EXPECT_TRUE(Validate(t, kb, active).accepted());
  // D2D members take no cell resources.
  t = GroupTemplate(kb, "b", {20, 21, 22, 23, 24});
  t.preferred_mode = PreferredMode::kOffNetworkD2D;
  EXPECT_TRUE(Validate(t, kb, active).accepted());
  kb.SetCapabilities({10, false, true});
  EXPECT_EQ(Validate(t, kb, active).reason, RejectReason::kInsufficientResources);
}

TEST(Validate, ConflictAndSubscription) {
  auto kb = kb::KnowledgeBase::Default();
  std::vector<DeployedIntent> active = {LiveIntent(1, "team1", {3, 4, 5})};
  auto t = GroupTemplate(kb, "g9", {5, 30});
  EXPECT_EQ(Validate(t, kb, active).reason,
            RejectReason::kConflictWithDeployedIntent);
  t.group_id = "team1";
  EXPECT_TRUE(Validate(t, kb, active).accepted());
  active[0].status = IntentStatus::kWithdrawn;
  t.group_id = "g9";
  EXPECT_TRUE(Validate(t, kb, active).accepted());
  t.subscriber = "nobody";
  EXPECT_EQ(Validate(t, kb, active).reason, RejectReason::kNoSubscription);
  t.profile.name = "hologram";
  EXPECT_EQ(Validate(t, kb, active).reason, RejectReason::kUnknownService);
}

TEST(CompileBearer, ModesAndPriority) {
  auto kb = kb::KnowledgeBase::Default();
  auto t = GroupTemplate(kb, "team1", {3, 4});
  auto b = CompileBearer(t, 7);
  EXPECT_EQ(b.bearer_id, 7);
  EXPECT_EQ(b.modes, (std::vector<Mode>{Mode::kOnNetwork, Mode::kOnNetwork}));
  EXPECT_EQ(b.priority, 4);
  EXPECT_EQ(b.packet_delay_budget_ms, 300.0);
  t.preferred_mode = PreferredMode::kRelay;
  EXPECT_EQ(CompileBearer(t, 1).modes[1], Mode::kRelay);
  t.profile = kb.LookupProfile("ptt-emergency-call");
  EXPECT_EQ(CompileBearer(t, 1).priority, 1);
  t.priority = 3;
  EXPECT_EQ(CompileBearer(t, 1).priority, 3);
}

TEST(Deploy, RegistersOnceAndStampsTime) {
  FakeSim sim;
  auto kb = kb::KnowledgeBase::Default();
  auto b = CompileBearer(GroupTemplate(kb, "team1", {3, 4}), 1);
  auto d = Deploy(b, sim, 120s);
  EXPECT_EQ(d.deployed_at, 120000ms);
  EXPECT_EQ(d.status, IntentStatus::kActive);
  EXPECT_TRUE(sim.HasSession("team1"));
  EXPECT_EQ(CodeOf([&] { Deploy(b, sim, 121s); }), ErrorCode::kSimulatorRejected);
}

TEST(DeployedIntent, StatusTransitions) {
  DeployedIntent d;
  d.Transition(IntentStatus::kBreached);
  d.Transition(IntentStatus::kActive);
  d.Transition(IntentStatus::kBreached);
  d.Transition(IntentStatus::kWithdrawn);
  EXPECT_FALSE(d.live());
  EXPECT_EQ(CodeOf([&] { d.Transition(IntentStatus::kActive); }),
            ErrorCode::kInvariantViolation);
  DeployedIntent e;
  EXPECT_THROW(e.Transition(IntentStatus::kActive), Error);
}

TEST(Assure, Actions) {
  auto topo = MakeTopology();
  auto kb = kb::KnowledgeBase::Default();
  const auto& profile = kb.LookupProfile("ptt-group-call");
  netsim::RadioModel radio;
  DeployedIntent d = LiveIntent(1, "team1", {3, 4, 5});

  KpiWindow good{std::vector<Micros>(20, 120ms), std::vector<Micros>(20, 60ms)};
  auto a = Assure(d, good, profile, topo, radio);
  EXPECT_EQ(a.kind, AssuranceKind::kNoAction);
  EXPECT_DOUBLE_EQ(*a.at_p95_ms, 120.0);
  EXPECT_EQ(d.status, IntentStatus::kActive);

  KpiWindow slow{std::vector<Micros>(20, 400ms), {}};
  a = Assure(d, slow, profile, topo, radio);
  EXPECT_EQ(a.kind, AssuranceKind::kFlagBreach);
  EXPECT_DOUBLE_EQ(*a.at_p95_ms, 400.0);
  EXPECT_FALSE(a.m2e_p95_ms);
  EXPECT_EQ(d.status, IntentStatus::kBreached);

  // Still breached, nobody out of coverage: nothing further to do.
  a = Assure(d, slow, profile, topo, radio);
  EXPECT_EQ(a.kind, AssuranceKind::kNoAction);

  // ue-3 at 1000 m receives 30 - 40 - 90 = -100 dBm.
  topo.node(NodeId{5}).position = {1000.0, 0.0};
  a = Assure(d, slow, profile, topo, radio);
  EXPECT_EQ(a.kind, AssuranceKind::kReorchestrate);
  EXPECT_EQ(a.mode, PreferredMode::kRelay);
  EXPECT_EQ(a.endpoints, std::vector<NodeId>{NodeId{5}});

  d.status = IntentStatus::kWithdrawn;
  EXPECT_EQ(CodeOf([&] { Assure(d, good, profile, topo, radio); }),
            ErrorCode::kInvariantViolation);
}

TEST(Assure, UsesOnlyMostRecentWindow) {
  auto topo = MakeTopology();
  auto kb = kb::KnowledgeBase::Default();
  DeployedIntent d = LiveIntent(1, "team1", {3});
  KpiWindow w;
  w.at.assign(50, 900ms);
  w.at.insert(w.at.end(), 20, 100ms);
  auto a = Assure(d, w, kb.LookupProfile("ptt-group-call"), topo, {});
  EXPECT_EQ(a.kind, AssuranceKind::kNoAction);
  EXPECT_DOUBLE_EQ(*a.at_p95_ms, 100.0);
}

TEST(Orchestrator, SubmitPipeline) {
  auto topo = MakeTopology();
  auto kb = kb::KnowledgeBase::Default();
  FakeSim sim;
  Orchestrator o(kb, topo, sim);
  std::int64_t ticks = 0;
  o.SetClock([&] {
    return std::chrono::steady_clock::time_point(std::chrono::microseconds(ticks += 7));
  });

  auto ok = o.Submit({"team1 connect ptt-group-call between team1-members", "team1"}, 0ms);
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(*ok.handle, 1);
  EXPECT_TRUE(sim.HasSession("team1"));
  EXPECT_EQ(o.timings().back().wall_clock_us, 7);
  EXPECT_EQ(o.timings().back().outcome, "deployed");

  auto conflict = o.Submit({"provider connect ptt-group-call to ue-2 ue-7 with group g2",
                            "provider"}, 1s);
  EXPECT_EQ(conflict.rejection, RejectReason::kConflictWithDeployedIntent);
  auto junk = o.Submit({"hello world", "provider"}, 2s);
  EXPECT_EQ(junk.error, ErrorCode::kNoActionKeyword);
  auto dup = o.Submit({"team1 connect ptt-group-call to ue-3", "team1"}, 3s);
  EXPECT_EQ(dup.error, ErrorCode::kSimulatorRejected);
  ASSERT_EQ(o.rejections().size(), 3u);
  EXPECT_EQ(o.rejections()[0].reason, "ConflictWithDeployedIntent");
  EXPECT_EQ(o.rejections()[1].reason, "NoActionKeyword");
  EXPECT_EQ(o.timings().size(), 4u);

  auto re = o.Submit({"ue-3 reconnect ptt-group-call via team1-anchor", "ue-3"}, 4s);
  ASSERT_TRUE(re.ok());
  EXPECT_EQ(o.intent(1).bearer.modes[2], Mode::kRelay);
  EXPECT_EQ(sim.updates.back().modes, std::vector<Mode>{Mode::kRelay});
  auto back = o.Submit({"ue-3 reconnect ptt-group-call via team1-anchor with mode on-network",
                        "ue-3"}, 5s);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(o.intent(*re.handle).status, IntentStatus::kWithdrawn);
  EXPECT_EQ(o.intent(1).bearer.modes[2], Mode::kOnNetwork);

  auto mod = o.Submit({"provider modify ptt-group-call for team1 with priority 2",
                       "provider"}, 6s);
  ASSERT_TRUE(mod.ok());
  EXPECT_EQ(o.intent(1).bearer.priority, 2);

  auto down = o.Submit({"provider disconnect ptt-group-call for team1", "provider"}, 7s);
  ASSERT_TRUE(down.ok());
  EXPECT_FALSE(sim.HasSession("team1"));
  EXPECT_TRUE(o.Live().empty());
}

TEST(Orchestrator, ReorchestrateClearsBreach) {
  auto topo = MakeTopology();
  auto kb = kb::KnowledgeBase::Default();
  FakeSim sim;
  Orchestrator o(kb, topo, sim);
  ASSERT_TRUE(o.Submit({"team3 connect ptt-group-call between team3-members", "team3"}, 0ms).ok());
  o.intent(1).Transition(IntentStatus::kBreached);
  NodeId ue13 = *topo.FindByName("ue-13");
  o.Reorchestrate(1, PreferredMode::kRelay, {ue13});
  EXPECT_EQ(o.intent(1).status, IntentStatus::kActive);
  EXPECT_EQ(o.intent(1).bearer.modes[2], Mode::kRelay);
  EXPECT_EQ(o.intent(1).bearer.modes[1], Mode::kOnNetwork);
  EXPECT_THROW(o.intent(9), Error);
}

// The verdict never depends on the order of the deployed-intent registry.
TEST(ValidateProperty, OrderIndependent) {
  auto kb = kb::KnowledgeBase::Default();
  kb.SetCapabilities({12, true, true});
  Rng rng(404);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<DeployedIntent> active;
    const auto n = rng.UniformInt(0, 6);
    for (int i = 0; i < n; ++i) active.push_back(testing::RandomDeployed(rng, i + 1));
    auto t = testing::RandomTemplate(rng, kb);
    const auto expected = Validate(t, kb, active);
    for (int p = 0; p < 5; ++p) {
      std::mt19937_64 g(rng.Next());
      std::shuffle(active.begin(), active.end(), g);
      ASSERT_EQ(Validate(t, kb, active), expected) << trial;
    }
  }
}

}  // namespace
}  // namespace ibnptt::orch
