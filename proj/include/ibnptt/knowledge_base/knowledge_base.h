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

#ifndef IBNPTT_KNOWLEDGE_BASE_KNOWLEDGE_BASE_H_
#define IBNPTT_KNOWLEDGE_BASE_KNOWLEDGE_BASE_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ibnptt::kb {

// kNone marks non-PTT offerings (video, data); the priority ordering
// Emergency < Group < Private is enforced among PTT call types only.
enum class CallType { kGroup, kPrivate, kEmergency, kNone };

std::string_view CallTypeName(CallType type);
CallType ParseCallType(std::string_view name);  // throws kParseError

struct ServiceProfile {
  std::string name;
  CallType call_type = CallType::kGroup;
  int priority = 4;  // 1 (highest) .. 9
  double guaranteed_bitrate_kbps = 0.0;
  double at_target_ms = 300.0;
  double m2e_target_ms = 300.0;

  bool operator==(const ServiceProfile&) const = default;
};

struct SlaRecord {
  std::string subscriber;
  std::set<std::string> allowed_services;
};

struct CapabilityRecord {
  int cell_capacity_users = 64;
  bool d2d_supported = true;
  bool relay_supported = true;
};

// Operator-side store consulted while translating and validating intents.
// Reads are safe from any thread; mutation is single-writer and only happens
// during setup or between simulation events.
class KnowledgeBase {
 public:
  // Default PTT, video and data profiles; SLAs granting the three PTT
  // services to team1..team3 and to the provider.
  static KnowledgeBase Default();

  // Replaces any profile of the same name. Throws Error(kInvariantViolation)
  // on non-positive targets, priority outside 1..9, negative bitrate, or a
  // profile that breaks the call-type priority ordering.
  void RegisterProfile(const ServiceProfile& profile);

  // Replaces any record for the same subscriber. Throws
  // Error(kInvariantViolation) if an allowed service is not registered.
  void RegisterSla(const SlaRecord& sla);

  void SetCapabilities(const CapabilityRecord& caps);

  // Throws Error(kUnknownService).
  const ServiceProfile& LookupProfile(std::string_view service) const;

  bool CheckSubscription(std::string_view subscriber,
                         std::string_view service) const;

  const CapabilityRecord& capabilities() const { return capabilities_; }
  std::vector<ServiceProfile> profiles() const;
  std::vector<SlaRecord> slas() const;

 private:
  std::map<std::string, ServiceProfile, std::less<>> profiles_;
  std::map<std::string, SlaRecord, std::less<>> slas_;
  CapabilityRecord capabilities_;
};

}  // namespace ibnptt::kb

#endif  // IBNPTT_KNOWLEDGE_BASE_KNOWLEDGE_BASE_H_
