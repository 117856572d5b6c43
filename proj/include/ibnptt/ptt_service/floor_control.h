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

#ifndef IBNPTT_PTT_SERVICE_FLOOR_CONTROL_H_
#define IBNPTT_PTT_SERVICE_FLOOR_CONTROL_H_

#include <deque>
#include <optional>

#include "ibnptt/common/sim_time.h"
#include "ibnptt/netsim/topology.h"

namespace ibnptt::ptt {

struct FloorRequest {
  netsim::NodeId ue;
  Micros request_t{0};  // when the UE sent the request
  Micros arrival_t{0};  // when it reached the arbitration point
  netsim::Mode mode = netsim::Mode::kOnNetwork;
};

// Invariants: no holder implies an empty queue; the queue never contains
// the holder or the same UE twice.
struct FloorState {
  std::optional<netsim::NodeId> holder;
  std::deque<FloorRequest> queue;
};

// Untimed floor arbitration at the arbitration point: an idle floor is
// granted on request, a busy floor queues FIFO, a release hands the floor
// to the queue head.
class FloorArbiter {
 public:
  // Returns the request when it is granted immediately. Throws
  // Error(kDuplicateRequest) if the UE already holds or waits for the floor.
  std::optional<FloorRequest> Request(const FloorRequest& request);

  // Returns the request granted next, if any. Throws Error(kNotHolder).
  std::optional<FloorRequest> Release(netsim::NodeId ue);

  bool IsQueued(netsim::NodeId ue) const;
  const FloorState& state() const { return state_; }

 private:
  FloorState state_;
};

}  // namespace ibnptt::ptt

#endif  // IBNPTT_PTT_SERVICE_FLOOR_CONTROL_H_
