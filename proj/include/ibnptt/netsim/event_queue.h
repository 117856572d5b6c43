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

#ifndef IBNPTT_NETSIM_EVENT_QUEUE_H_
#define IBNPTT_NETSIM_EVENT_QUEUE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "ibnptt/common/sim_time.h"

namespace ibnptt::netsim {

// Discrete-event core. Events run in (time, insertion sequence) order, so
// equal-time events execute in the order they were scheduled. Single
// threaded; one instance per replication.
class EventQueue {
 public:
  using Callback = std::function<void()>;

  Micros Now() const { return now_; }

  // Throws Error(kScheduleInPast) if at < Now().
  void Schedule(Micros at, Callback fn);
  void ScheduleIn(Micros delay, Callback fn) { Schedule(now_ + delay, std::move(fn)); }

  // Executes every event with time <= t_end, then leaves the clock at t_end.
  void RunUntil(Micros t_end);

  std::size_t pending() const { return heap_.size(); }
  std::uint64_t executed() const { return executed_; }

 private:
  struct Entry {
    Micros time;
    std::uint64_t seq;
    Callback fn;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  std::vector<Entry> heap_;
  Micros now_{0};
  std::uint64_t next_seq_ = 0;
  std::uint64_t executed_ = 0;
};

}  // namespace ibnptt::netsim

#endif  // IBNPTT_NETSIM_EVENT_QUEUE_H_
