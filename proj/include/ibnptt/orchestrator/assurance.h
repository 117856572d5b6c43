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

#ifndef IBNPTT_ORCHESTRATOR_ASSURANCE_H_
#define IBNPTT_ORCHESTRATOR_ASSURANCE_H_

#include <optional>
#include <string_view>
#include <vector>

#include "ibnptt/common/sim_time.h"
#include "ibnptt/knowledge_base/knowledge_base.h"
#include "ibnptt/netsim/radio.h"
#include "ibnptt/netsim/topology.h"
#include "ibnptt/orchestrator/orchestrator.h"

namespace ibnptt::orch {

inline constexpr std::size_t kAssuranceWindow = 20;
inline constexpr double kAssurancePercentile = 95.0;

// Most recent KPI samples attributed to one deployed intent.
struct KpiWindow {
  std::vector<Micros> at;
  std::vector<Micros> m2e;
};

enum class AssuranceKind { kNoAction, kFlagBreach, kReorchestrate };

std::string_view AssuranceKindName(AssuranceKind kind);

struct AssuranceAction {
  AssuranceKind kind = AssuranceKind::kNoAction;
  PreferredMode mode = PreferredMode::kAuto;     // for kReorchestrate
  std::vector<netsim::NodeId> endpoints;         // for kReorchestrate
  std::optional<double> at_p95_ms;
  std::optional<double> m2e_p95_ms;
};

// Evaluates one handle against its profile targets and updates its status
// (Active -> Breached on the first violation). A breached handle with an
// on-network endpoint below the rx threshold is re-orchestrated to relay.
// Throws Error(kInvariantViolation) for a withdrawn handle.
AssuranceAction Assure(DeployedIntent& handle, const KpiWindow& window,
                       const kb::ServiceProfile& profile,
                       const netsim::Topology& topology,
                       const netsim::RadioModel& radio);

}  // namespace ibnptt::orch

#endif  // IBNPTT_ORCHESTRATOR_ASSURANCE_H_
