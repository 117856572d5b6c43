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

#include "ibnptt/netsim/path_delay.h"

#include <algorithm>
#include <cmath>

#include "ibnptt/common/error.h"

namespace ibnptt::netsim {

void LinkDelays::Validate() const {
  for (Micros d : {ue_enb, enb_epc, epc_server, d2d_hop, relay_proc, jitter}) {
    if (d < Micros(0)) {
      throw Error(ErrorCode::kInvariantViolation, "negative link delay");
    }
  }
}

RelayQueue::RelayQueue(double service_rate_pps) : rate_pps_(service_rate_pps) {
  if (!(service_rate_pps > 0.0)) {
    throw Error(ErrorCode::kInvariantViolation,
                "relay service rate must be positive");
  }
}

Micros RelayQueue::PacketsToTime(std::size_t packets) const {
  return Micros(std::llround(static_cast<double>(packets) * 1e6 / rate_pps_));
}

void RelayQueue::Purge(Micros now) {
  const auto before = departures_.size();
  std::erase_if(departures_, [now](Micros d) { return d <= now; });
  dequeued_ += before - departures_.size();
}

Micros RelayQueue::Enqueue(Micros now) {
  Purge(now);
  const std::size_t length = departures_.size();
  const Micros wait = PacketsToTime(length);
  departures_.push_back(now + PacketsToTime(length + 1));
  ++enqueued_;
  return wait;
}

std::size_t RelayQueue::Length(Micros now) const {
  return static_cast<std::size_t>(std::count_if(
      departures_.begin(), departures_.end(), [now](Micros d) { return d > now; }));
}

Micros RelayQueue::WaitingTime(Micros now) const {
  return PacketsToTime(Length(now));
}

Micros BasePathDelay(Mode mode, const LinkDelays& d) {
  const Micros on_network = 2 * (d.ue_enb + d.enb_epc + d.epc_server);
  switch (mode) {
    case Mode::kOnNetwork:
      return on_network;
    case Mode::kOffNetworkD2D:
      return d.d2d_hop;
    case Mode::kRelay:
      return d.d2d_hop + d.relay_proc + on_network;
  }
  return on_network;
}

Micros MinPathDelay(Mode mode, const LinkDelays& d) {
  return std::max(Micros(0), BasePathDelay(mode, d) - d.jitter);
}

Micros PathDelay(Mode mode, const LinkDelays& d, Micros relay_wait, Rng& rng) {
  Micros delay = BasePathDelay(mode, d);
  if (mode == Mode::kRelay) delay += relay_wait;
  if (d.jitter > Micros(0)) delay += rng.UniformMicros(-d.jitter, d.jitter);
  return std::max(Micros(0), delay);
}

Micros PathDelay(const Node& src, const Node& dst, Mode mode,
                 const LinkDelays& delays, RelayQueue* relay, Micros now,
                 Rng& rng) {
  if (src.id == dst.id) {
    throw Error(ErrorCode::kInvariantViolation,
                "path delay needs distinct endpoints");
  }
  Micros wait{0};
  if (mode == Mode::kRelay) {
    if (relay == nullptr) {
      throw Error(ErrorCode::kInvariantViolation,
                  "relay path without a relay queue");
    }
    wait = relay->Enqueue(now);
  }
  return PathDelay(mode, delays, wait, rng);
}

}  // namespace ibnptt::netsim
