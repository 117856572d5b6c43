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

#ifndef IBNPTT_SCENARIO_CONFIG_H_
#define IBNPTT_SCENARIO_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ibnptt/cnl_intent/lexicon.h"
#include "ibnptt/common/sim_time.h"
#include "ibnptt/knowledge_base/knowledge_base.h"
#include "ibnptt/netsim/radio.h"
#include "ibnptt/netsim/topology.h"
#include "ibnptt/ptt_service/ptt_service.h"

namespace ibnptt::scenario {

struct TeamConfig {
  int id = 0;
  int users = 4;  // including the anchor
  netsim::Position anchor;
  // Path of the first member; member k is shifted by -k * spacing_m in y.
  std::vector<netsim::Position> waypoints;
  double spacing_m = 4.0;
  double speed_mps = 1.0;
  std::string call_start = "B";  // instant name or milliseconds
  bool relay_fallback = false;   // members switch to relay on weak signal
  int talkers = 0;               // first N UEs talk; 0 means all
};

struct Timeline {
  Micros a{0};
  Micros b{20s};
  Micros c{60s};
  Micros e{180s};

  void Validate() const;  // A < B < C < E, else Error(kInvariantViolation)
  // "A".."E" or a millisecond value. Throws Error(kParseError).
  Micros Resolve(std::string_view instant) const;
};

struct TimedIntent {
  std::string key;
  std::string instant;
  std::string text;
};

struct ScenarioConfig {
  std::vector<TeamConfig> teams;
  Timeline timeline;
  netsim::RadioModel radio;
  double enb_tx_dbm = 30.0;
  double ue_tx_dbm = 23.0;
  Micros mobility_step = 100ms;
  Micros assurance_period = 5s;
  ptt::PttParams ptt;
  std::vector<TimedIntent> intents;
  kb::KnowledgeBase kb = kb::KnowledgeBase::Default();
  int runs = 20;
  std::uint64_t base_seed = 1;
  // Reject intent tokens that fill no grammar slot. Not read from the file.
  bool strict_cnl = false;
  // Sections that were absent and filled from defaults.
  std::set<std::string> defaulted;

  void Validate() const;
  // Default lexicon extended with every registered service name.
  cnl::Lexicon MakeLexicon() const;
  const TeamConfig& team(int id) const;
};

// The shipped scenario: three teams, timeline {0, 20, 60, 180} s.
ScenarioConfig DefaultScenario();

// INI sections [teams] [timeline] [radio] [delays] [traffic] [profiles]
// [slas] [intents] [network] [run]; omitted sections keep their defaults.
// Throws Error(kParseError) naming the line and key, Error(kIoError) for an
// unreadable file, Error(kInvariantViolation) for inconsistent values.
ScenarioConfig LoadConfig(const std::filesystem::path& path);
ScenarioConfig ParseConfig(const std::string& text,
                           const std::string& origin = "<string>");

// Effective configuration in the input format, defaulted sections marked.
std::string EchoConfig(const ScenarioConfig& cfg);

// Copy with every team resized to `users`.
ScenarioConfig WithUsersPerTeam(const ScenarioConfig& cfg, int users);

}  // namespace ibnptt::scenario

#endif  // IBNPTT_SCENARIO_CONFIG_H_
