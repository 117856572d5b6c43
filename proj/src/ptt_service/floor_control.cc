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

#include "ibnptt/ptt_service/floor_control.h"

#include <algorithm>
#include <string>

#include "ibnptt/common/error.h"

namespace ibnptt::ptt {

bool FloorArbiter::IsQueued(netsim::NodeId ue) const {
  return std::any_of(state_.queue.begin(), state_.queue.end(),
                     [ue](const FloorRequest& r) { return r.ue == ue; });
}

std::optional<FloorRequest> FloorArbiter::Request(const FloorRequest& request) {
  if (state_.holder == request.ue || IsQueued(request.ue)) {
    throw Error(ErrorCode::kDuplicateRequest,
                "node " + std::to_string(request.ue.value) +
                    " already holds or awaits the floor");
  }
  if (!state_.holder) {
    state_.holder = request.ue;
    return request;
  }
  state_.queue.push_back(request);
  return std::nullopt;
}

std::optional<FloorRequest> FloorArbiter::Release(netsim::NodeId ue) {
  if (state_.holder != ue) {
    throw Error(ErrorCode::kNotHolder,
                "node " + std::to_string(ue.value) + " does not hold the floor");
  }
  state_.holder.reset();
  if (state_.queue.empty()) return std::nullopt;
  FloorRequest next = state_.queue.front();
  state_.queue.pop_front();
  state_.holder = next.ue;
  return next;
}

}  // namespace ibnptt::ptt
