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

#include "ibnptt/netsim/event_queue.h"

#include <algorithm>
#include <string>

#include "ibnptt/common/error.h"

namespace ibnptt::netsim {

void EventQueue::Schedule(Micros at, Callback fn) {
  if (at < now_) {
    throw Error(ErrorCode::kScheduleInPast,
                "event at " + FormatMillis(at) + " ms before clock " +
                    FormatMillis(now_) + " ms");
  }
  heap_.push_back(Entry{at, next_seq_++, std::move(fn)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
}

void EventQueue::RunUntil(Micros t_end) {
  while (!heap_.empty() && heap_.front().time <= t_end) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry e = std::move(heap_.back());
    heap_.pop_back();
    now_ = e.time;
    ++executed_;
    e.fn();
  }
  if (t_end > now_) now_ = t_end;
}

}  // namespace ibnptt::netsim
