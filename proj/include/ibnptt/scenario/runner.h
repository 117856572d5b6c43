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

#ifndef IBNPTT_SCENARIO_RUNNER_H_
#define IBNPTT_SCENARIO_RUNNER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ibnptt/common/sim_time.h"
#include "ibnptt/netsim/topology.h"
#include "ibnptt/orchestrator/orchestrator.h"
#include "ibnptt/ptt_service/kpi.h"
#include "ibnptt/ptt_service/ptt_service.h"
#include "ibnptt/scenario/config.h"

namespace ibnptt::scenario {

struct ModeSwitch {
  std::uint64_t seed = 0;
  Micros t{0};
  int team = 0;
  int ue = 0;
  netsim::Mode from = netsim::Mode::kOnNetwork;
  netsim::Mode to = netsim::Mode::kOnNetwork;
  double rx_dbm = 0.0;
};

// Received power of a relay-fallback UE after one mobility step.
struct PowerSample {
  Micros t{0};
  int ue = 0;
  double rx_dbm = 0.0;
};

struct AssuranceRecord {
  std::uint64_t seed = 0;
  Micros t{0};
  int handle = 0;
  std::string group;
  std::string action;
  std::string status;  // after the evaluation
  std::optional<double> at_p95_ms;
  std::optional<double> m2e_p95_ms;
};

struct RunReport {
  std::uint64_t seed = 0;
  std::vector<ptt::AtSample> at;
  std::vector<ptt::M2eSample> m2e;
  std::vector<orch::TranslationTiming> timings;
  std::vector<orch::RejectionRecord> rejections;
  std::vector<ModeSwitch> switches;
  std::vector<AssuranceRecord> assurance;
  std::vector<PowerSample> power_trace;  // only when requested
  std::map<int, netsim::Mode> final_modes;  // UE number -> mode at E
  std::map<int, int> ue_team;               // UE number -> team
  std::map<int, bool> ue_anchor;            // UE number -> is anchor
};

struct RunOptions {
  bool record_power_trace = false;
  ptt::PttService::Observer floor_observer;
  // Replaces the random spurt length (used by scripted traces).
  ptt::PttService::SpurtSource spurt_source;
};

// One replication of the scripted timeline. Rejected intents are recorded,
// not thrown.
RunReport RunScenario(const ScenarioConfig& cfg, std::uint64_t seed,
                      const RunOptions& options = {});

struct BatchResult {
  std::vector<RunReport> runs;  // ordered by seed
  RunReport aggregate;          // all runs pooled in seed order
};

// Seeds base_seed .. base_seed + runs - 1. Concurrent execution yields the
// same result as sequential execution.
BatchResult RunBatch(const ScenarioConfig& cfg, bool concurrent = true);

// Concatenates the runs in the given order; the pooled seed is the first.
RunReport Pool(std::span<const RunReport> runs);

// Topology of the scenario at instant A.
netsim::Topology BuildTopology(const ScenarioConfig& cfg);

}  // namespace ibnptt::scenario

#endif  // IBNPTT_SCENARIO_RUNNER_H_
