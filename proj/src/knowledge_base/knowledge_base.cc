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

#include "ibnptt/knowledge_base/knowledge_base.h"

#include "ibnptt/common/error.h"

namespace ibnptt::kb {
namespace {

// Lower rank must carry a numerically lower (more urgent) priority.
int PttRank(CallType t) {
  switch (t) {
    case CallType::kEmergency:
      return 0;
    case CallType::kGroup:
      return 1;
    case CallType::kPrivate:
      return 2;
    case CallType::kNone:
      break;
  }
  return -1;
}

[[noreturn]] void Violation(const std::string& what) {
  throw Error(ErrorCode::kInvariantViolation, what);
}

}  // namespace

std::string_view CallTypeName(CallType type) {
  switch (type) {
    case CallType::kGroup:
      return "group";
    case CallType::kPrivate:
      return "private";
    case CallType::kEmergency:
      return "emergency";
    case CallType::kNone:
      return "none";
  }
  return "none";
}

CallType ParseCallType(std::string_view name) {
  if (name == "group") return CallType::kGroup;
  if (name == "private") return CallType::kPrivate;
  if (name == "emergency") return CallType::kEmergency;
  if (name == "none") return CallType::kNone;
  throw Error(ErrorCode::kParseError,
              "unknown call type '" + std::string(name) + "'");
}

KnowledgeBase KnowledgeBase::Default() {
  KnowledgeBase kb;
  kb.RegisterProfile({"ptt-group-call", CallType::kGroup, 4, 64.0, 300, 300});
  kb.RegisterProfile(
      {"ptt-private-call", CallType::kPrivate, 5, 64.0, 300, 300});
  kb.RegisterProfile(
      {"ptt-emergency-call", CallType::kEmergency, 1, 64.0, 300, 300});
  kb.RegisterProfile({"video", CallType::kNone, 6, 1024.0, 1000, 300});
  kb.RegisterProfile({"data", CallType::kNone, 8, 256.0, 1000, 1000});
  const std::set<std::string> ptt = {"ptt-group-call", "ptt-private-call",
                                     "ptt-emergency-call"};
  for (const char* who : {"team1", "team2", "team3", "provider"}) {
    kb.RegisterSla({who, ptt});
  }
  return kb;
}

void KnowledgeBase::RegisterProfile(const ServiceProfile& p) {
  if (p.name.empty()) Violation("profile without a name");
  if (!(p.at_target_ms > 0) || !(p.m2e_target_ms > 0)) {
    Violation("profile '" + p.name + "' needs positive AT and M2E targets");
  }
  if (p.priority < 1 || p.priority > 9) {
    Violation("profile '" + p.name + "' priority outside 1..9");
  }
  if (p.guaranteed_bitrate_kbps < 0) {
    Violation("profile '" + p.name + "' has negative bitrate");
  }
  const int rank = PttRank(p.call_type);
  if (rank >= 0) {
    for (const auto& [name, other] : profiles_) {
      const int other_rank = PttRank(other.call_type);
      if (name == p.name || other_rank < 0 || other_rank == rank) continue;
      const bool ordered = rank < other_rank ? p.priority < other.priority
                                             : p.priority > other.priority;
      if (!ordered) {
        Violation("profile '" + p.name + "' breaks priority ordering with '" +
                  name + "'");
      }
    }
  }
  profiles_.insert_or_assign(p.name, p);
}

void KnowledgeBase::RegisterSla(const SlaRecord& sla) {
  if (sla.subscriber.empty()) Violation("SLA without a subscriber");
  for (const auto& s : sla.allowed_services) {
    if (!profiles_.contains(s)) {
      Violation("SLA for '" + sla.subscriber + "' allows unregistered '" + s +
                "'");
    }
  }
  slas_.insert_or_assign(sla.subscriber, sla);
}

void KnowledgeBase::SetCapabilities(const CapabilityRecord& caps) {
  if (caps.cell_capacity_users < 1) Violation("cell capacity must be >= 1");
  capabilities_ = caps;
}

const ServiceProfile& KnowledgeBase::LookupProfile(
    std::string_view service) const {
  auto it = profiles_.find(service);
  if (it == profiles_.end()) {
    throw Error(ErrorCode::kUnknownService,
                "no profile for '" + std::string(service) + "'");
  }
  return it->second;
}

bool KnowledgeBase::CheckSubscription(std::string_view subscriber,
                                      std::string_view service) const {
  auto it = slas_.find(subscriber);
  if (it == slas_.end()) return false;
  return it->second.allowed_services.contains(std::string(service));
}

std::vector<ServiceProfile> KnowledgeBase::profiles() const {
  std::vector<ServiceProfile> out;
  for (const auto& [_, p] : profiles_) out.push_back(p);
  return out;
}

std::vector<SlaRecord> KnowledgeBase::slas() const {
  std::vector<SlaRecord> out;
  for (const auto& [_, s] : slas_) out.push_back(s);
  return out;
}

}  // namespace ibnptt::kb
