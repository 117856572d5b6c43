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

#include "ibnptt/orchestrator/assurance.h"

#include <span>

#include "ibnptt/common/error.h"
#include "ibnptt/common/percentile.h"

namespace ibnptt::orch {

std::string_view AssuranceKindName(AssuranceKind kind) {
  switch (kind) {
    case AssuranceKind::kNoAction: return "no-action";
    case AssuranceKind::kFlagBreach: return "flag-breach";
    case AssuranceKind::kReorchestrate: return "reorchestrate";
  }
  return "?";
}

namespace {

std::optional<double> WindowP95(const std::vector<Micros>& samples) {
  if (samples.empty()) return std::nullopt;
  std::size_t from = samples.size() > kAssuranceWindow
                         ? samples.size() - kAssuranceWindow
                         : 0;
  std::span<const Micros> tail(samples.data() + from, samples.size() - from);
  return ToMillis(Percentile(tail, kAssurancePercentile));
}

}  // namespace

AssuranceAction Assure(DeployedIntent& handle, const KpiWindow& window,
                       const kb::ServiceProfile& profile,
                       const netsim::Topology& topology,
                       const netsim::RadioModel& radio) {
  if (!handle.live()) {
    throw Error(ErrorCode::kInvariantViolation,
                "intent " + std::to_string(handle.handle) + " is withdrawn");
  }
  AssuranceAction action;
  action.at_p95_ms = WindowP95(window.at);
  action.m2e_p95_ms = WindowP95(window.m2e);

  if (handle.status == IntentStatus::kBreached) {
    const netsim::Node& enb = topology.node(topology.FindRole(netsim::NodeRole::kEnb));
    for (std::size_t i = 0; i < handle.bearer.endpoints.size(); ++i) {
      if (handle.bearer.modes[i] != netsim::Mode::kOnNetwork) continue;
      const netsim::Node& ue = topology.node(handle.bearer.endpoints[i]);
      if (ue.is_anchor) continue;
      if (netsim::ReceivedPower(ue, enb, radio).dbm < radio.rx_threshold_dbm) {
        action.endpoints.push_back(ue.id);
      }
    }
    if (!action.endpoints.empty()) {
      action.kind = AssuranceKind::kReorchestrate;
      action.mode = PreferredMode::kRelay;
      return action;
    }
  }

  const bool violated =
      (action.at_p95_ms && *action.at_p95_ms > profile.at_target_ms) ||
      (action.m2e_p95_ms && *action.m2e_p95_ms > profile.m2e_target_ms);
  if (violated && handle.status == IntentStatus::kActive) {
    handle.Transition(IntentStatus::kBreached);
    action.kind = AssuranceKind::kFlagBreach;
  }
  return action;
}

}  // namespace ibnptt::orch
