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

#ifndef IBNPTT_ORCHESTRATOR_ORCHESTRATOR_H_
#define IBNPTT_ORCHESTRATOR_ORCHESTRATOR_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ibnptt/cnl_intent/intent.h"
#include "ibnptt/cnl_intent/lexicon.h"
#include "ibnptt/common/error.h"
#include "ibnptt/common/sim_time.h"
#include "ibnptt/knowledge_base/knowledge_base.h"
#include "ibnptt/netsim/topology.h"

namespace ibnptt::orch {

enum class PreferredMode { kOnNetwork, kOffNetworkD2D, kRelay, kAuto };

std::string_view PreferredModeName(PreferredMode mode);
std::optional<netsim::Mode> ConcreteMode(PreferredMode mode);

struct DeploymentTemplate {
  kb::ServiceProfile profile;
  std::vector<netsim::NodeId> endpoints;
  PreferredMode preferred_mode = PreferredMode::kAuto;
  std::string group_id;
  cnl::IntentKind kind = cnl::IntentKind::kConnection;
  std::string subscriber;  // SLA holder the intent is checked against
  std::optional<int> priority;  // `priority <n>` override

  bool operator==(const DeploymentTemplate&) const = default;
};

struct BearerConfig {
  int bearer_id = 0;
  std::string group_id;
  std::string service;
  int priority = 0;
  double gbr_kbps = 0.0;
  double packet_delay_budget_ms = 0.0;
  std::vector<netsim::NodeId> endpoints;
  std::vector<netsim::Mode> modes;  // parallel to endpoints

  bool operator==(const BearerConfig&) const = default;
};

enum class RejectReason {
  kInsufficientResources,
  kConflictWithDeployedIntent,
  kNoSubscription,
  kUnknownService,
};

std::string_view RejectReasonName(RejectReason reason);

struct ValidationResult {
  std::optional<RejectReason> reason;  // empty when accepted

  bool accepted() const { return !reason; }
  static ValidationResult Accept() { return {}; }
  static ValidationResult Reject(RejectReason r) { return {r}; }
  bool operator==(const ValidationResult&) const = default;
};

enum class IntentStatus { kActive, kBreached, kWithdrawn };

std::string_view IntentStatusName(IntentStatus status);

struct DeployedIntent {
  int handle = 0;
  cnl::RawIntent source;
  DeploymentTemplate tmpl;
  BearerConfig bearer;
  Micros deployed_at{0};
  IntentStatus status = IntentStatus::kActive;

  bool live() const { return status != IntentStatus::kWithdrawn; }
  // Allowed: Active->Breached, Active->Withdrawn, Breached->Active, and
  // Breached->Withdrawn on teardown. Throws Error(kInvariantViolation).
  void Transition(IntentStatus to);
};

struct TranslationTiming {
  int handle = -1;  // -1 when the intent produced no deployment
  Micros issued_at{0};
  std::string intent;
  std::string outcome;  // "deployed", a rejection reason or an error name
  std::int64_t wall_clock_us = 0;
};

struct RejectionRecord {
  Micros t{0};
  std::string source;
  std::string intent;
  std::string reason;
  std::string detail;
};

// Southbound interface to the simulator.
class NetworkController {
 public:
  virtual ~NetworkController() = default;
  virtual bool HasSession(std::string_view group) const = 0;
  virtual void CreateSession(const BearerConfig& bearer) = 0;
  // Applies new endpoint modes or priority to an existing session.
  virtual void UpdateSession(const BearerConfig& bearer) = 0;
  virtual void RemoveSession(std::string_view group) = 0;
};

// Subscriber an intent is charged to: the team of a UE source, else the
// source itself.
std::string SubscriberOf(std::string_view source,
                         const netsim::Topology& topology);

// Throws Error(kUnknownService) or Error(kUnresolvableEndpoint).
DeploymentTemplate Translate(const cnl::IntentAst& ast,
                             const kb::KnowledgeBase& kb,
                             const netsim::Topology& topology);

// Checks in order: unknown service, subscription, cell capacity,
// conflicts with other groups. Only live intents in `active` count.
ValidationResult Validate(const DeploymentTemplate& t,
                          const kb::KnowledgeBase& kb,
                          std::span<const DeployedIntent> active);

BearerConfig CompileBearer(const DeploymentTemplate& t, int next_id);

// Registers a new session. Throws Error(kSimulatorRejected) if the group
// already has one. The returned intent has no handle or source yet.
DeployedIntent Deploy(const BearerConfig& bearer, NetworkController& sim,
                      Micros now);

struct SubmitOutcome {
  std::optional<int> handle;
  std::optional<RejectReason> rejection;
  std::optional<ErrorCode> error;
  std::string message;

  bool ok() const { return handle && !rejection && !error; }
};

// Runs intents through tokenize, parse, translate, validate, compile and
// deploy, keeping the deployed-intent registry.
class Orchestrator {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  Orchestrator(const kb::KnowledgeBase& kb, const netsim::Topology& topology,
               NetworkController& sim, cnl::Lexicon lexicon = cnl::Lexicon::Default(),
               bool strict = false);

  // Never throws for pipeline failures: they become rejection records.
  SubmitOutcome Submit(const cnl::RawIntent& raw, Micros now);

  // Switches the given endpoints of a handle to `mode` and returns the
  // handle to Active.
  void Reorchestrate(int handle, PreferredMode mode,
                     const std::vector<netsim::NodeId>& endpoints);

  void SetClock(Clock clock) { clock_ = std::move(clock); }

  const std::vector<DeployedIntent>& deployed() const { return deployed_; }
  DeployedIntent& intent(int handle);
  std::vector<DeployedIntent> Live() const;
  const std::vector<TranslationTiming>& timings() const { return timings_; }
  const std::vector<RejectionRecord>& rejections() const { return rejections_; }

 private:
  SubmitOutcome Dispatch(const cnl::RawIntent& raw,
                         const DeploymentTemplate& t, Micros now);
  int AddIntent(DeployedIntent intent, const cnl::RawIntent& raw,
                const DeploymentTemplate& t);
  std::optional<int> PrimaryHandle(std::string_view group) const;

  const kb::KnowledgeBase& kb_;
  const netsim::Topology& topology_;
  NetworkController& sim_;
  cnl::Lexicon lexicon_;
  bool strict_;
  Clock clock_;
  std::vector<DeployedIntent> deployed_;
  std::vector<TranslationTiming> timings_;
  std::vector<RejectionRecord> rejections_;
  int next_bearer_id_ = 1;
};

}  // namespace ibnptt::orch

#endif  // IBNPTT_ORCHESTRATOR_ORCHESTRATOR_H_
