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

#ifndef IBNPTT_NETSIM_RADIO_H_
#define IBNPTT_NETSIM_RADIO_H_

#include "ibnptt/netsim/topology.h"

namespace ibnptt::netsim {

// Log-distance pathloss: PL(d) = pl0_db + 10 n log10(d / d0_m).
struct RadioModel {
  double pl0_db = 40.0;
  double d0_m = 1.0;
  double exponent_n = 3.0;
  double rx_threshold_dbm = -95.0;
  double hysteresis_db = 3.0;

  void Validate() const;  // throws Error(kInvariantViolation)
};

struct RxPower {
  double dbm = 0.0;
  // Set when the UE sits on the transmitter; dbm is then tx - pl0 by
  // convention.
  bool degenerate = false;
};

RxPower ReceivedPower(const Node& ue, const Node& enb, const RadioModel& radio);

// OnNetwork -> Relay once rx drops below the threshold; Relay -> OnNetwork
// only above threshold + hysteresis. D2D is scripted and left unchanged.
Mode EvaluateModeSwitch(const Node& ue, const Node& enb, const RadioModel& radio,
                        Mode current);

}  // namespace ibnptt::netsim

#endif  // IBNPTT_NETSIM_RADIO_H_
