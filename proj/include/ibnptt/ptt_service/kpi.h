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

#ifndef IBNPTT_PTT_SERVICE_KPI_H_
#define IBNPTT_PTT_SERVICE_KPI_H_

#include <cstdint>
#include <vector>

#include "ibnptt/common/sim_time.h"
#include "ibnptt/netsim/topology.h"

namespace ibnptt::ptt {

// UEs are identified by their number n in "ue-<n>".
struct AtSample {
  std::uint64_t seed = 0;
  int team = 0;
  int ue = 0;
  netsim::Mode mode = netsim::Mode::kOnNetwork;  // mode at request
  int users_per_team = 0;
  Micros request_t{0};
  Micros grant_t{0};

  Micros at() const { return grant_t - request_t; }
  bool operator==(const AtSample&) const = default;
};

struct M2eSample {
  std::uint64_t seed = 0;
  int team = 0;
  int talker = 0;
  int listener = 0;
  netsim::Mode mode = netsim::Mode::kOnNetwork;  // mode of the media path
  int users_per_team = 0;
  Micros spoken_t{0};
  Micros heard_t{0};

  Micros m2e() const { return heard_t - spoken_t; }
  bool operator==(const M2eSample&) const = default;
};

// Per-run sample store. Samples with negative latency indicate an engine
// bug and are refused with Error(kNegativeLatency).
class KpiStore {
 public:
  void RecordAt(const AtSample& sample);
  void RecordM2e(const M2eSample& sample);

  const std::vector<AtSample>& at() const { return at_; }
  const std::vector<M2eSample>& m2e() const { return m2e_; }

 private:
  std::vector<AtSample> at_;
  std::vector<M2eSample> m2e_;
};

}  // namespace ibnptt::ptt

#endif  // IBNPTT_PTT_SERVICE_KPI_H_
