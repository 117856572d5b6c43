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

#include "ibnptt/orchestrator/orchestrator.h"

#include <algorithm>
#include <charconv>
#include <regex>
#include <set>

namespace ibnptt::orch {

using netsim::Mode;
using netsim::NodeId;

std::string_view PreferredModeName(PreferredMode mode) {
  switch (mode) {
    case PreferredMode::kOnNetwork: return "on-network";
    case PreferredMode::kOffNetworkD2D: return "d2d";
    case PreferredMode::kRelay: return "relay";
    case PreferredMode::kAuto: return "auto";
  }
  return "?";
}

std::optional<Mode> ConcreteMode(PreferredMode mode) {
  switch (mode) {
    case PreferredMode::kOnNetwork: return Mode::kOnNetwork;
    case PreferredMode::kOffNetworkD2D: return Mode::kOffNetworkD2D;
    case PreferredMode::kRelay: return Mode::kRelay;
    case PreferredMode::kAuto: return std::nullopt;
  }
  return std::nullopt;
}

std::string_view RejectReasonName(RejectReason reason) {
  switch (reason) {
    case RejectReason::kInsufficientResources: return "InsufficientResources";
    case RejectReason::kConflictWithDeployedIntent:
      return "ConflictWithDeployedIntent";
    case RejectReason::kNoSubscription: return "NoSubscription";
    case RejectReason::kUnknownService: return "UnknownService";
  }
  return "?";
}

std::string_view IntentStatusName(IntentStatus status) {
  switch (status) {
    case IntentStatus::kActive: return "active";
    case IntentStatus::kBreached: return "breached";
    case IntentStatus::kWithdrawn: return "withdrawn";
  }
  return "?";
}

void DeployedIntent::Transition(IntentStatus to) {
  const bool ok =
      (status == IntentStatus::kActive && to != IntentStatus::kActive) ||
      (status == IntentStatus::kBreached && to != IntentStatus::kBreached);
  if (!ok) {
    throw Error(ErrorCode::kInvariantViolation,
                "intent " + std::to_string(handle) + ": " +
                    std::string(IntentStatusName(status)) + " -> " +
                    std::string(IntentStatusName(to)));
  }
  status = to;
}

namespace {

const std::regex& TeamRefPattern() {
  static const std::regex re(R"(team(\d+)(-(members|anchor))?)");
  return re;
}

std::optional<NodeId> FindUe(std::string_view name,
                             const netsim::Topology& topology) {
  auto id = topology.FindByName(name);
  if (id && topology.node(*id).role == netsim::NodeRole::kUe) return id;
  return std::nullopt;
}

// Expands one endpoint reference into UE ids.
std::vector<NodeId> Resolve(const std::string& ref,
                            const netsim::Topology& topology) {
  std::smatch m;
  if (std::regex_match(ref, m, TeamRefPattern())) {
    int team = std::stoi(m[1].str());
    if (m[3].matched && m[3].str() == "anchor") {
      if (auto anchor = topology.TeamAnchor(team)) return {*anchor};
    } else {
      auto ues = topology.TeamUes(team);
      if (!ues.empty()) return ues;
    }
  } else if (auto ue = FindUe(ref, topology)) {
    return {*ue};
  }
  throw Error(ErrorCode::kUnresolvableEndpoint,
              "'" + ref + "' is not in the topology");
}

void AppendUnique(std::vector<NodeId>& out, const std::vector<NodeId>& ids) {
  for (NodeId id : ids) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
}

PreferredMode ParsePreferredMode(std::string_view name) {
  if (name == "auto") return PreferredMode::kAuto;
  switch (netsim::ParseMode(name)) {
    case Mode::kOnNetwork: return PreferredMode::kOnNetwork;
    case Mode::kOffNetworkD2D: return PreferredMode::kOffNetworkD2D;
    case Mode::kRelay: return PreferredMode::kRelay;
  }
  return PreferredMode::kAuto;
}

bool ConsumesCell(PreferredMode mode) {
  return mode != PreferredMode::kOffNetworkD2D;
}

}  // namespace

std::string SubscriberOf(std::string_view source,
                         const netsim::Topology& topology) {
  if (auto ue = FindUe(source, topology)) {
    if (auto team = topology.node(*ue).team) {
      return "team" + std::to_string(*team);
    }
  }
  return std::string(source);
}

DeploymentTemplate Translate(const cnl::IntentAst& ast,
                             const kb::KnowledgeBase& kb,
                             const netsim::Topology& topology) {
  DeploymentTemplate t;
  t.profile = kb.LookupProfile(ast.service);
  t.kind = ast.kind;
  t.subscriber = SubscriberOf(ast.source, topology);

  auto via = ast.qualifiers.find("via");
  auto source_ue = FindUe(ast.source, topology);
  if (ast.kind == cnl::IntentKind::kReconnection && source_ue) {
    // A UE reconnecting itself; a `via` target is the path, not a member.
    t.endpoints = {*source_ue};
  } else {
    for (const std::string& ref : ast.endpoints) {
      if (ast.kind == cnl::IntentKind::kReconnection &&
          via != ast.qualifiers.end() && ref == via->second) {
        continue;
      }
      AppendUnique(t.endpoints, Resolve(ref, topology));
    }
  }
  if (t.endpoints.empty() && via != ast.qualifiers.end() &&
      ast.kind == cnl::IntentKind::kReconnection) {
    t.endpoints = Resolve(via->second, topology);
  }

  if (auto mode = ast.qualifiers.find("mode"); mode != ast.qualifiers.end()) {
    t.preferred_mode = ParsePreferredMode(mode->second);
  } else if (via != ast.qualifiers.end()) {
    t.preferred_mode = PreferredMode::kRelay;
  }

  if (auto p = ast.qualifiers.find("priority"); p != ast.qualifiers.end()) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(p->second.data(),
                                     p->second.data() + p->second.size(), value);
    if (ec != std::errc() || ptr != p->second.data() + p->second.size() ||
        value < 1 || value > 9) {
      throw Error(ErrorCode::kParseError,
                  "priority '" + p->second + "' is not in 1..9");
    }
    t.priority = value;
  }

  if (auto g = ast.qualifiers.find("group"); g != ast.qualifiers.end()) {
    t.group_id = g->second;
  } else if (!t.endpoints.empty() && topology.node(t.endpoints.front()).team) {
    t.group_id = "team" + std::to_string(*topology.node(t.endpoints.front()).team);
  } else if (source_ue && topology.node(*source_ue).team) {
    t.group_id = "team" + std::to_string(*topology.node(*source_ue).team);
  } else {
    t.group_id = ast.source;
  }
  return t;
}

ValidationResult Validate(const DeploymentTemplate& t,
                          const kb::KnowledgeBase& kb,
                          std::span<const DeployedIntent> active) {
  try {
    kb.LookupProfile(t.profile.name);
  } catch (const Error&) {
    return ValidationResult::Reject(RejectReason::kUnknownService);
  }
  if (!kb.CheckSubscription(t.subscriber, t.profile.name)) {
    return ValidationResult::Reject(RejectReason::kNoSubscription);
  }

  const bool adds_members = t.kind == cnl::IntentKind::kConnection ||
                            t.kind == cnl::IntentKind::kReconnection;
  if (adds_members) {
    const kb::CapabilityRecord& caps = kb.capabilities();
    if ((t.preferred_mode == PreferredMode::kOffNetworkD2D &&
         !caps.d2d_supported) ||
        (t.preferred_mode == PreferredMode::kRelay && !caps.relay_supported)) {
      return ValidationResult::Reject(RejectReason::kInsufficientResources);
    }
    std::set<NodeId> mine(t.endpoints.begin(), t.endpoints.end());
    std::set<NodeId> in_cell;
    for (const DeployedIntent& d : active) {
      if (!d.live()) continue;
      for (std::size_t i = 0; i < d.bearer.endpoints.size(); ++i) {
        if (d.bearer.modes[i] != Mode::kOffNetworkD2D &&
            !mine.count(d.bearer.endpoints[i])) {
          in_cell.insert(d.bearer.endpoints[i]);
        }
      }
    }
    std::size_t demand =
        in_cell.size() + (ConsumesCell(t.preferred_mode) ? mine.size() : 0);
    if (demand > static_cast<std::size_t>(caps.cell_capacity_users)) {
      return ValidationResult::Reject(RejectReason::kInsufficientResources);
    }
    for (const DeployedIntent& d : active) {
      if (d.status != IntentStatus::kActive || d.bearer.group_id == t.group_id) {
        continue;
      }
      for (NodeId e : d.bearer.endpoints) {
        if (mine.count(e)) {
          return ValidationResult::Reject(
              RejectReason::kConflictWithDeployedIntent);
        }
      }
    }
  }
  return ValidationResult::Accept();
}

BearerConfig CompileBearer(const DeploymentTemplate& t, int next_id) {
  BearerConfig b;
  b.bearer_id = next_id;
  b.group_id = t.group_id;
  b.service = t.profile.name;
  b.priority = t.priority.value_or(t.profile.priority);
  b.gbr_kbps = t.profile.guaranteed_bitrate_kbps;
  b.packet_delay_budget_ms = t.profile.m2e_target_ms;
  b.endpoints = t.endpoints;
  b.modes.assign(t.endpoints.size(),
                 ConcreteMode(t.preferred_mode).value_or(Mode::kOnNetwork));
  return b;
}

DeployedIntent Deploy(const BearerConfig& bearer, NetworkController& sim,
                      Micros now) {
  if (sim.HasSession(bearer.group_id)) {
    throw Error(ErrorCode::kSimulatorRejected,
                "group '" + bearer.group_id + "' already has a session");
  }
  sim.CreateSession(bearer);
  DeployedIntent d;
  d.bearer = bearer;
  d.deployed_at = now;
  d.status = IntentStatus::kActive;
  return d;
}

Orchestrator::Orchestrator(const kb::KnowledgeBase& kb,
                           const netsim::Topology& topology,
                           NetworkController& sim, cnl::Lexicon lexicon,
                           bool strict)
    : kb_(kb),
      topology_(topology),
      sim_(sim),
      lexicon_(std::move(lexicon)),
      strict_(strict),
      clock_([] { return std::chrono::steady_clock::now(); }) {}

DeployedIntent& Orchestrator::intent(int handle) {
  if (handle < 1 || handle > static_cast<int>(deployed_.size())) {
    throw Error(ErrorCode::kInvariantViolation,
                "no intent handle " + std::to_string(handle));
  }
  return deployed_[static_cast<std::size_t>(handle - 1)];
}

std::vector<DeployedIntent> Orchestrator::Live() const {
  std::vector<DeployedIntent> live;
  for (const DeployedIntent& d : deployed_) {
    if (d.live()) live.push_back(d);
  }
  return live;
}

int Orchestrator::AddIntent(DeployedIntent intent, const cnl::RawIntent& raw,
                            const DeploymentTemplate& t) {
  intent.handle = static_cast<int>(deployed_.size()) + 1;
  intent.source = raw;
  intent.tmpl = t;
  deployed_.push_back(std::move(intent));
  return deployed_.back().handle;
}

std::optional<int> Orchestrator::PrimaryHandle(std::string_view group) const {
  for (const DeployedIntent& d : deployed_) {
    if (d.live() && d.bearer.group_id == group &&
        d.tmpl.kind == cnl::IntentKind::kConnection) {
      return d.handle;
    }
  }
  return std::nullopt;
}

SubmitOutcome Orchestrator::Submit(const cnl::RawIntent& raw, Micros now) {
  const auto start = clock_();
  SubmitOutcome outcome;
  try {
    auto tokens = cnl::Tokenize(raw);
    cnl::ParseOptions options{strict_, raw.source};
    cnl::IntentAst ast = cnl::ParseIntent(tokens, lexicon_, options);
    DeploymentTemplate t = Translate(ast, kb_, topology_);
    ValidationResult verdict = Validate(t, kb_, deployed_);
    if (!verdict.accepted()) {
      outcome.rejection = verdict.reason;
      outcome.message = "rejected for group '" + t.group_id + "'";
    } else {
      outcome = Dispatch(raw, t, now);
    }
  } catch (const Error& e) {
    outcome.error = e.code();
    outcome.message = e.what();
  }
  const auto end = clock_();

  TranslationTiming timing;
  timing.handle = outcome.handle.value_or(-1);
  timing.issued_at = raw.issued_at;
  timing.intent = raw.text;
  if (outcome.rejection) {
    timing.outcome = RejectReasonName(*outcome.rejection);
  } else if (outcome.error) {
    timing.outcome = ErrorCodeName(*outcome.error);
  } else {
    timing.outcome = "deployed";
  }
  timing.wall_clock_us = std::max<std::int64_t>(
      0, std::chrono::duration_cast<std::chrono::microseconds>(end - start)
             .count());
  timings_.push_back(timing);
  if (!outcome.ok()) {
    rejections_.push_back(
        {now, raw.source, raw.text, timing.outcome, outcome.message});
  }
  return outcome;
}

SubmitOutcome Orchestrator::Dispatch(const cnl::RawIntent& raw,
                                     const DeploymentTemplate& t, Micros now) {
  SubmitOutcome outcome;
  switch (t.kind) {
    case cnl::IntentKind::kConnection: {
      BearerConfig b = CompileBearer(t, next_bearer_id_);
      DeployedIntent d = Deploy(b, sim_, now);
      ++next_bearer_id_;
      outcome.handle = AddIntent(std::move(d), raw, t);
      break;
    }
    case cnl::IntentKind::kReconnection: {
      if (!sim_.HasSession(t.group_id)) {
        throw Error(ErrorCode::kSimulatorRejected,
                    "no session for group '" + t.group_id + "' to reconnect");
      }
      BearerConfig b = CompileBearer(t, next_bearer_id_++);
      // A newer reconnection of the same endpoints supersedes older ones.
      std::set<NodeId> mine(t.endpoints.begin(), t.endpoints.end());
      for (DeployedIntent& d : deployed_) {
        if (!d.live() || d.tmpl.kind != cnl::IntentKind::kReconnection ||
            d.bearer.group_id != t.group_id) {
          continue;
        }
        if (std::all_of(d.bearer.endpoints.begin(), d.bearer.endpoints.end(),
                        [&](NodeId e) { return mine.count(e) > 0; })) {
          d.Transition(IntentStatus::kWithdrawn);
        }
      }
      // Keep the group bearer's per-endpoint modes current.
      if (auto primary = PrimaryHandle(t.group_id)) {
        BearerConfig& group = intent(*primary).bearer;
        for (std::size_t i = 0; i < group.endpoints.size(); ++i) {
          if (!b.modes.empty() && mine.count(group.endpoints[i])) {
            group.modes[i] = b.modes.front();
          }
        }
      }
      sim_.UpdateSession(b);
      DeployedIntent d;
      d.bearer = b;
      d.deployed_at = now;
      outcome.handle = AddIntent(std::move(d), raw, t);
      break;
    }
    case cnl::IntentKind::kModification: {
      auto primary = PrimaryHandle(t.group_id);
      if (!primary) {
        throw Error(ErrorCode::kSimulatorRejected,
                    "no session for group '" + t.group_id + "' to modify");
      }
      DeployedIntent& d = intent(*primary);
      if (t.priority) d.bearer.priority = *t.priority;
      sim_.UpdateSession(d.bearer);
      outcome.handle = *primary;
      break;
    }
    case cnl::IntentKind::kTeardown: {
      auto primary = PrimaryHandle(t.group_id);
      if (!primary) {
        throw Error(ErrorCode::kSimulatorRejected,
                    "no session for group '" + t.group_id + "' to tear down");
      }
      for (DeployedIntent& d : deployed_) {
        if (d.live() && d.bearer.group_id == t.group_id) {
          d.Transition(IntentStatus::kWithdrawn);
        }
      }
      sim_.RemoveSession(t.group_id);
      outcome.handle = *primary;
      break;
    }
  }
  return outcome;
}

void Orchestrator::Reorchestrate(int handle, PreferredMode mode,
                                 const std::vector<NodeId>& endpoints) {
  DeployedIntent& d = intent(handle);
  auto concrete = ConcreteMode(mode);
  if (concrete) {
    for (std::size_t i = 0; i < d.bearer.endpoints.size(); ++i) {
      if (std::find(endpoints.begin(), endpoints.end(),
                    d.bearer.endpoints[i]) != endpoints.end()) {
        d.bearer.modes[i] = *concrete;
      }
    }
  }
  if (d.status == IntentStatus::kBreached) d.Transition(IntentStatus::kActive);
  sim_.UpdateSession(d.bearer);
}

}  // namespace ibnptt::orch
