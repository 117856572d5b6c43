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

#include "ibnptt/ptt_service/ptt_service.h"

#include <algorithm>
#include <charconv>

#include "ibnptt/common/error.h"

namespace ibnptt::ptt {

using netsim::Mode;
using netsim::NodeId;

void TalkSpurtModel::Validate() const {
  if (spurt_min <= Micros(0) || spurt_max < spurt_min ||
      mean_request_gap <= Micros(0) || packet_interval <= Micros(0)) {
    throw Error(ErrorCode::kInvariantViolation,
                "talk-spurt durations must be positive and min <= max");
  }
}

std::int64_t TalkSpurtModel::PacketsPerSpurt(Micros spurt) const {
  return std::max<std::int64_t>(1, spurt / packet_interval);
}

void PttParams::Validate() const {
  delays.Validate();
  traffic.Validate();
  if (!(relay_service_rate_pps > 0.0)) {
    throw Error(ErrorCode::kInvariantViolation,
                "relay service rate must be positive");
  }
  if (offnet_grant_guard < Micros(0) || mode_switch_penalty < Micros(0)) {
    throw Error(ErrorCode::kInvariantViolation,
                "floor-control delays must be >= 0");
  }
}

std::string_view FloorEventKindName(FloorEvent::Kind kind) {
  switch (kind) {
    case FloorEvent::Kind::kRequestSent: return "request_sent";
    case FloorEvent::Kind::kRequestArrived: return "request_arrived";
    case FloorEvent::Kind::kQueued: return "queued";
    case FloorEvent::Kind::kGranted: return "granted";
    case FloorEvent::Kind::kGrantReceived: return "grant_received";
    case FloorEvent::Kind::kReleased: return "released";
  }
  return "?";
}

bool CallSession::IsParticipant(NodeId ue) const {
  return std::find(participants_.begin(), participants_.end(), ue) !=
         participants_.end();
}

PttService::PttService(netsim::EventQueue& events, netsim::Topology& topology,
                       PttParams params, Rng& rng, KpiStore& kpis,
                       RunTags tags)
    : events_(events),
      topology_(topology),
      params_(std::move(params)),
      rng_(rng),
      kpis_(kpis),
      tags_(std::move(tags)) {
  params_.Validate();
}

CallSession& PttService::CreateSession(const std::string& group,
                                       std::vector<NodeId> participants) {
  if (HasSession(group)) {
    throw Error(ErrorCode::kSimulatorRejected,
                "session '" + group + "' already exists");
  }
  std::vector<NodeId> unique;
  for (NodeId p : participants) {
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) {
      unique.push_back(p);
    }
  }
  if (unique.size() < 2) {
    throw Error(ErrorCode::kInvariantViolation,
                "session '" + group + "' needs at least two participants");
  }
  for (NodeId p : unique) {
    const netsim::Node& n = topology_.node(p);
    if (n.role != netsim::NodeRole::kUe || !n.team) {
      throw Error(ErrorCode::kInvariantViolation,
                  n.name + " cannot join a call session");
    }
  }
  CallSession s;
  s.group_id_ = group;
  s.participants_ = std::move(unique);
  s.team_ = *topology_.node(s.participants_.front()).team;
  s.incarnation_ = next_incarnation_++;
  auto [it, inserted] = sessions_.emplace(group, std::move(s));
  for (NodeId p : it->second.participants_) clients_[p] = Client{};
  RefreshArbitration(group);
  return it->second;
}

bool PttService::HasSession(std::string_view group) const {
  return sessions_.find(group) != sessions_.end();
}

void PttService::RemoveSession(std::string_view group) {
  auto it = sessions_.find(group);
  if (it == sessions_.end()) return;
  for (NodeId p : it->second.participants_) clients_.erase(p);
  sessions_.erase(it);
}

CallSession& PttService::session(std::string_view group) {
  auto it = sessions_.find(group);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::kInvariantViolation,
                "no session '" + std::string(group) + "'");
  }
  return it->second;
}

const CallSession& PttService::session(std::string_view group) const {
  return const_cast<PttService*>(this)->session(group);
}

std::vector<std::string> PttService::SessionIds() const {
  std::vector<std::string> ids;
  for (const auto& [id, s] : sessions_) ids.push_back(id);
  return ids;
}

void PttService::RefreshArbitration(std::string_view group) {
  CallSession& s = session(group);
  std::size_t offnet = 0;
  for (NodeId p : s.participants_) {
    if (topology_.node(p).mode == Mode::kOffNetworkD2D) ++offnet;
  }
  s.arbitration_ = 2 * offnet > s.participants_.size()
                       ? ArbitrationPoint::kAnchorUe
                       : ArbitrationPoint::kPttServer;
}

CallSession* PttService::Find(const SessionRef& ref) {
  auto it = sessions_.find(ref.first);
  if (it == sessions_.end() || it->second.incarnation_ != ref.second) {
    return nullptr;
  }
  return &it->second;
}

NodeId PttService::Anchor(const CallSession& s) const {
  auto anchor = topology_.TeamAnchor(s.team_);
  if (!anchor) {
    throw Error(ErrorCode::kInvariantViolation,
                "team " + std::to_string(s.team_) + " has no anchor");
  }
  return *anchor;
}

netsim::RelayQueue& PttService::RelayQueueAt(NodeId anchor) {
  auto& q = relay_queues_[anchor];
  if (!q) q = std::make_unique<netsim::RelayQueue>(params_.relay_service_rate_pps);
  return *q;
}

netsim::RelayQueue& PttService::QueueFor(NodeId ue) {
  const netsim::Node& n = topology_.node(ue);
  auto anchor = n.team ? topology_.TeamAnchor(*n.team) : std::nullopt;
  if (!anchor) {
    throw Error(ErrorCode::kInvariantViolation, n.name + " has no relay anchor");
  }
  return RelayQueueAt(*anchor);
}

Micros PttService::ControlDelay(const CallSession& s, NodeId ue) {
  if (s.arbitration_ == ArbitrationPoint::kAnchorUe) {
    if (ue == Anchor(s)) return Micros(0);
    return netsim::PathDelay(Mode::kOffNetworkD2D, params_.delays, Micros(0),
                             rng_);
  }
  Mode mode = topology_.node(ue).mode;
  Micros wait{0};
  if (mode == Mode::kRelay) wait = QueueFor(ue).Enqueue(events_.Now());
  return netsim::PathDelay(mode, params_.delays, wait, rng_);
}

int PttService::UeNumber(NodeId ue) const {
  const std::string& name = topology_.node(ue).name;
  int n = 0;
  if (name.rfind("ue-", 0) == 0) {
    std::from_chars(name.data() + 3, name.data() + name.size(), n);
  }
  return n;
}

int PttService::UsersPerTeam(int team) const {
  auto it = tags_.users_per_team.find(team);
  if (it != tags_.users_per_team.end()) return it->second;
  return static_cast<int>(topology_.TeamUes(team).size());
}

void PttService::Emit(FloorEvent::Kind kind, const CallSession& s, NodeId ue) {
  if (observer_) observer_(FloorEvent{kind, s.group_id_, ue, events_.Now()});
}

void PttService::RequestFloor(std::string_view group, NodeId ue) {
  CallSession& s = session(group);
  if (!s.IsParticipant(ue)) {
    throw Error(ErrorCode::kNotParticipant,
                topology_.node(ue).name + " is not in '" + s.group_id_ + "'");
  }
  Client& c = clients_[ue];
  if (c.state != ClientState::kIdle || s.arbiter_.state().holder == ue ||
      s.arbiter_.IsQueued(ue)) {
    throw Error(ErrorCode::kDuplicateRequest,
                topology_.node(ue).name + " already holds or awaits the floor");
  }
  c.state = ClientState::kRequesting;
  FloorRequest request{ue, events_.Now(), Micros(0), topology_.node(ue).mode};
  Micros delay = ControlDelay(s, ue);
  if (c.penalty_armed) {
    delay += params_.mode_switch_penalty;
    c.penalty_armed = false;
  }
  Emit(FloorEvent::Kind::kRequestSent, s, ue);
  events_.ScheduleIn(delay, [this, ref = Ref(s), request] {
    OnRequestArrival(ref, request);
  });
}

void PttService::OnRequestArrival(const SessionRef& ref, FloorRequest request) {
  CallSession* s = Find(ref);
  if (!s) return;
  request.arrival_t = events_.Now();
  Emit(FloorEvent::Kind::kRequestArrived, *s, request.ue);
  if (auto granted = s->arbiter_.Request(request)) {
    IssueGrant(*s, *granted);
  } else {
    Emit(FloorEvent::Kind::kQueued, *s, request.ue);
  }
}

void PttService::IssueGrant(CallSession& s, const FloorRequest& request) {
  Emit(FloorEvent::Kind::kGranted, s, request.ue);
  const std::uint64_t epoch = ++s.epoch_;
  const bool offnet = s.arbitration_ == ArbitrationPoint::kAnchorUe;
  for (NodeId p : s.participants_) {
    Micros delay = ControlDelay(s, p);
    if (p == request.ue) {
      if (offnet) delay += params_.offnet_grant_guard;
      events_.ScheduleIn(delay, [this, ref = Ref(s), request, epoch] {
        OnGrantReceived(ref, request, epoch);
      });
    } else {
      events_.ScheduleIn(delay, [this, p, epoch] {
        OnFloorNotice(p, epoch, true);
      });
    }
  }
}

void PttService::OnFloorNotice(NodeId ue, std::uint64_t epoch, bool busy) {
  auto it = clients_.find(ue);
  if (it == clients_.end() || epoch <= it->second.epoch) return;
  it->second.epoch = epoch;
  it->second.floor_busy = busy;
}

void PttService::OnGrantReceived(const SessionRef& ref, FloorRequest request,
                                 std::uint64_t epoch) {
  CallSession* s = Find(ref);
  if (!s) return;
  Client& c = clients_[request.ue];
  c.state = ClientState::kTalking;
  if (epoch > c.epoch) {
    c.epoch = epoch;
    c.floor_busy = true;
  }
  AtSample sample;
  sample.seed = tags_.seed;
  sample.team = s->team_;
  sample.ue = UeNumber(request.ue);
  sample.mode = request.mode;
  sample.users_per_team = UsersPerTeam(s->team_);
  sample.request_t = request.request_t;
  sample.grant_t = events_.Now();
  kpis_.RecordAt(sample);
  Emit(FloorEvent::Kind::kGrantReceived, *s, request.ue);
  Micros spurt = spurt_source_ ? spurt_source_(request.ue)
                               : rng_.UniformMicros(params_.traffic.spurt_min,
                                                    params_.traffic.spurt_max);
  TransmitMedia(s->group_id_, request.ue, spurt);
}

void PttService::TransmitMedia(std::string_view group, NodeId talker,
                               Micros spurt) {
  CallSession& s = session(group);
  if (s.arbiter_.state().holder != talker) {
    throw Error(ErrorCode::kNotHolder,
                topology_.node(talker).name + " does not hold the floor");
  }
  const std::int64_t packets = params_.traffic.PacketsPerSpurt(spurt);
  const Micros interval = params_.traffic.packet_interval;
  for (std::int64_t k = 0; k < packets; ++k) {
    events_.ScheduleIn(k * interval, [this, ref = Ref(s), talker] {
      OnPacket(ref, talker);
    });
  }
  events_.ScheduleIn(packets * interval, [this, ref = Ref(s), talker] {
    OnSpurtEnd(ref, talker);
  });
}

void PttService::OnPacket(const SessionRef& ref, NodeId talker) {
  CallSession* s = Find(ref);
  if (!s || s->arbiter_.state().holder != talker) return;
  const Micros now = events_.Now();
  const bool offnet = s->arbitration_ == ArbitrationPoint::kAnchorUe;
  const Mode talker_mode = topology_.node(talker).mode;
  const bool talker_relayed = !offnet && talker_mode == Mode::kRelay;

  bool any_listener_relayed = false;
  for (NodeId p : s->participants_) {
    if (p != talker && !offnet && topology_.node(p).mode == Mode::kRelay) {
      any_listener_relayed = true;
    }
  }
  // One uplink copy through the talker's anchor, one broadcast downlink copy
  // through the listeners' anchor.
  Micros up_wait{0};
  Micros down_wait{0};
  if (talker_relayed) up_wait = QueueFor(talker).Enqueue(now);
  if (any_listener_relayed) down_wait = RelayQueueAt(Anchor(*s)).Enqueue(now);

  const auto& d = params_.delays;
  for (NodeId p : s->participants_) {
    if (p == talker) continue;
    const Mode listener_mode = topology_.node(p).mode;
    Mode path_mode = Mode::kOnNetwork;
    Micros delay{0};
    if (offnet || talker_mode == Mode::kOffNetworkD2D ||
        listener_mode == Mode::kOffNetworkD2D) {
      path_mode = Mode::kOffNetworkD2D;
      delay = netsim::PathDelay(path_mode, d, Micros(0), rng_);
    } else if (talker_relayed && listener_mode == Mode::kRelay) {
      path_mode = Mode::kRelay;
      delay = netsim::PathDelay(path_mode, d, up_wait + down_wait, rng_) +
              d.d2d_hop + d.relay_proc;
    } else if (talker_relayed) {
      path_mode = Mode::kRelay;
      delay = netsim::PathDelay(path_mode, d, up_wait, rng_);
    } else if (listener_mode == Mode::kRelay) {
      path_mode = Mode::kRelay;
      delay = netsim::PathDelay(path_mode, d, down_wait, rng_);
    } else {
      delay = netsim::PathDelay(path_mode, d, Micros(0), rng_);
    }
    M2eSample sample;
    sample.seed = tags_.seed;
    sample.team = s->team_;
    sample.talker = UeNumber(talker);
    sample.listener = UeNumber(p);
    sample.mode = path_mode;
      sample.users_per_team = UsersPerTeam(s->team_);
    sample.spoken_t = now;
    sample.heard_t = now + delay;
    kpis_.RecordM2e(sample);
  }
}

void PttService::OnSpurtEnd(const SessionRef& ref, NodeId talker) {
  CallSession* s = Find(ref);
  if (!s || s->arbiter_.state().holder != talker) return;
  Micros delay = ControlDelay(*s, talker);
  events_.ScheduleIn(delay, [this, ref, talker] {
    OnReleaseArrival(ref, talker);
  });
}

void PttService::OnReleaseArrival(const SessionRef& ref, NodeId talker) {
  CallSession* s = Find(ref);
  if (!s || s->arbiter_.state().holder != talker) return;
  ReleaseFloor(s->group_id_, talker);
}

void PttService::ReleaseFloor(std::string_view group, NodeId ue) {
  CallSession& s = session(group);
  std::optional<FloorRequest> next = s.arbiter_.Release(ue);
  Emit(FloorEvent::Kind::kReleased, s, ue);
  clients_[ue].state = ClientState::kIdle;
  if (next) {
    IssueGrant(s, *next);
    return;
  }
  const std::uint64_t epoch = ++s.epoch_;
  for (NodeId p : s.participants_) {
    Micros delay = ControlDelay(s, p);
    events_.ScheduleIn(delay, [this, p, epoch] {
      OnFloorNotice(p, epoch, false);
    });
  }
}

void PttService::StartTraffic(std::string_view group,
                              const std::vector<NodeId>& talkers) {
  CallSession& s = session(group);
  s.traffic_ = true;
  for (NodeId t : talkers) {
    if (!s.IsParticipant(t)) {
      throw Error(ErrorCode::kNotParticipant,
                  topology_.node(t).name + " is not in '" + s.group_id_ + "'");
    }
    Micros gap = rng_.ExponentialMicros(params_.traffic.mean_request_gap);
    events_.ScheduleIn(gap, [this, ref = Ref(s), t] { OnTalkDesire(ref, t); });
  }
}

void PttService::OnTalkDesire(const SessionRef& ref, NodeId ue) {
  CallSession* s = Find(ref);
  if (!s || !s->traffic_) return;
  const Client& c = clients_[ue];
  const bool busy = params_.listen_before_talk && c.floor_busy;
  if (c.state == ClientState::kIdle && !busy &&
      s->arbiter_.state().holder != ue && !s->arbiter_.IsQueued(ue)) {
    RequestFloor(s->group_id_, ue);
  }
  Micros gap = rng_.ExponentialMicros(params_.traffic.mean_request_gap);
  events_.ScheduleIn(gap, [this, ref, ue] { OnTalkDesire(ref, ue); });
}

void PttService::NotifyModeChange(NodeId ue) { clients_[ue].penalty_armed = true; }

}  // namespace ibnptt::ptt
