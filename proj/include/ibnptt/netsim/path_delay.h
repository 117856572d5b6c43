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

#ifndef IBNPTT_NETSIM_PATH_DELAY_H_
#define IBNPTT_NETSIM_PATH_DELAY_H_

#include <cstdint>
#include <deque>

#include "ibnptt/common/rng.h"
#include "ibnptt/common/sim_time.h"
#include "ibnptt/netsim/topology.h"

namespace ibnptt::netsim {

// One-way per-hop latencies; jitter is the half-width of a uniform term.
struct LinkDelays {
  Micros ue_enb = 10ms;
  Micros enb_epc = 5ms;
  Micros epc_server = 10ms;
  Micros d2d_hop = 5ms;
  Micros relay_proc = 5ms;
  Micros jitter = 5ms;

  void Validate() const;  // all >= 0, else Error(kInvariantViolation)
};

// FIFO forwarding queue at a relaying anchor. A packet enqueued at t waits
// queue_length(t) / service_rate and then occupies the anchor for one
// service interval.
class RelayQueue {
 public:
  explicit RelayQueue(double service_rate_pps);

  // Returns the waiting time of a packet arriving now.
  Micros Enqueue(Micros now);

  std::size_t Length(Micros now) const;
  Micros WaitingTime(Micros now) const;

  double service_rate_pps() const { return rate_pps_; }
  std::uint64_t enqueued() const { return enqueued_; }
  // Packets whose departure has been observed by an Enqueue call.
  std::uint64_t dequeued() const { return dequeued_; }
  std::size_t in_queue() const { return departures_.size(); }

 private:
  void Purge(Micros now);
  Micros PacketsToTime(std::size_t packets) const;

  double rate_pps_;
  std::deque<Micros> departures_;
  std::uint64_t enqueued_ = 0;
  std::uint64_t dequeued_ = 0;
};

// Delay with zero jitter and an empty relay queue:
//   OnNetwork: ue_enb + enb_epc + epc_server + epc_server + enb_epc + ue_enb
//   D2D:       d2d_hop
//   Relay:     d2d_hop + relay_proc + OnNetwork
Micros BasePathDelay(Mode mode, const LinkDelays& delays);

// Smallest delay the jitter term can produce for the mode.
Micros MinPathDelay(Mode mode, const LinkDelays& delays);

// Base delay plus the given relay waiting time plus uniform jitter, floored
// at zero. No random draw is made when jitter is zero.
Micros PathDelay(Mode mode, const LinkDelays& delays, Micros relay_wait,
                 Rng& rng);

// Endpoint form: in Relay mode the packet is enqueued in `relay` at `now`
// and its waiting time is included. Throws Error(kInvariantViolation) when
// src == dst or when Relay mode is given without a queue.
Micros PathDelay(const Node& src, const Node& dst, Mode mode,
                 const LinkDelays& delays, RelayQueue* relay, Micros now,
                 Rng& rng);

}  // namespace ibnptt::netsim

#endif  // IBNPTT_NETSIM_PATH_DELAY_H_
