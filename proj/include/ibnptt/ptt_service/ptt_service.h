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

#ifndef IBNPTT_PTT_SERVICE_PTT_SERVICE_H_
#define IBNPTT_PTT_SERVICE_PTT_SERVICE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ibnptt/common/rng.h"
#include "ibnptt/common/sim_time.h"
#include "ibnptt/netsim/event_queue.h"
#include "ibnptt/netsim/path_delay.h"
#include "ibnptt/netsim/topology.h"
#include "ibnptt/ptt_service/floor_control.h"
#include "ibnptt/ptt_service/kpi.h"

namespace ibnptt::ptt {

struct TalkSpurtModel {
  Micros spurt_min = 2s;
  Micros spurt_max = 6s;
  // Mean of the exponential gap between successive talk attempts of a UE.
  Micros mean_request_gap = 10s;
  Micros packet_interval = 20ms;

  void Validate() const;  // Error(kInvariantViolation)
  // Number of voice frames in a spurt; at least one.
  std::int64_t PacketsPerSpurt(Micros spurt) const;
};

struct PttParams {
  netsim::LinkDelays delays;
  TalkSpurtModel traffic;
  double relay_service_rate_pps = 50.0;
  // Extra wait before an off-network arbiter confirms a grant to the
  // requester, covering contention from other D2D talkers.
  Micros offnet_grant_guard = 0ms;
  // One-time control-path penalty after a mode change.
  Micros mode_switch_penalty = 50ms;
  // Only request the floor when it is perceived idle.
  bool listen_before_talk = true;

  void Validate() const;
};

struct RunTags {
  std::uint64_t seed = 0;
  std::map<int, int> users_per_team;  // team -> users_per_team label
};

enum class ArbitrationPoint { kPttServer, kAnchorUe };

struct FloorEvent {
  enum class Kind {
    kRequestSent,
    kRequestArrived,
    kQueued,
    kGranted,
    kGrantReceived,
    kReleased
  };
  Kind kind;
  std::string group;
  netsim::NodeId ue;
  Micros t{0};
};

std::string_view FloorEventKindName(FloorEvent::Kind kind);

class CallSession {
 public:
  const std::string& group_id() const { return group_id_; }
  const std::vector<netsim::NodeId>& participants() const {
    return participants_;
  }
  int team() const { return team_; }
  ArbitrationPoint arbitration_point() const { return arbitration_; }
  const FloorState& floor() const { return arbiter_.state(); }
  bool IsParticipant(netsim::NodeId ue) const;

 private:
  friend class PttService;

  std::string group_id_;
  std::vector<netsim::NodeId> participants_;
  int team_ = 0;
  ArbitrationPoint arbitration_ = ArbitrationPoint::kPttServer;
  FloorArbiter arbiter_;
  std::uint64_t epoch_ = 0;
  std::uint64_t incarnation_ = 0;
  bool traffic_ = false;
};

// Timed floor control and media for all call sessions of one run. Every
// message is an event on the shared queue; all state is touched from event
// callbacks only.
class PttService {
 public:
  using SpurtSource = std::function<Micros(netsim::NodeId talker)>;
  using Observer = std::function<void(const FloorEvent&)>;

  PttService(netsim::EventQueue& events, netsim::Topology& topology,
             PttParams params, Rng& rng, KpiStore& kpis, RunTags tags);

  // Throws Error(kSimulatorRejected) if the group exists and
  // Error(kInvariantViolation) for fewer than two participants or a
  // participant that is not a UE.
  CallSession& CreateSession(const std::string& group,
                             std::vector<netsim::NodeId> participants);
  bool HasSession(std::string_view group) const;
  // Stops traffic; in-flight messages for the session are dropped.
  void RemoveSession(std::string_view group);
  CallSession& session(std::string_view group);
  const CallSession& session(std::string_view group) const;
  std::vector<std::string> SessionIds() const;

  // Re-derives the arbitration point from the participants' modes: the
  // anchor arbitrates when most participants are off-network.
  void RefreshArbitration(std::string_view group);

  // Client side: sends a floor request now. Throws Error(kNotParticipant)
  // or Error(kDuplicateRequest).
  void RequestFloor(std::string_view group, netsim::NodeId ue);
  // Arbitration side: processes the holder's release now. Throws
  // Error(kNotHolder).
  void ReleaseFloor(std::string_view group, netsim::NodeId ue);
  // Starts a talk spurt of the holder now; the release is sent when the
  // spurt ends. Throws Error(kNotHolder).
  void TransmitMedia(std::string_view group, netsim::NodeId talker,
                     Micros spurt);

  // Talkers attempt to speak after exponential gaps until the session is
  // removed.
  void StartTraffic(std::string_view group,
                    const std::vector<netsim::NodeId>& talkers);
  // Arms the one-time mode-switch penalty for the UE's next request.
  void NotifyModeChange(netsim::NodeId ue);

  void SetSpurtSource(SpurtSource source) { spurt_source_ = std::move(source); }
  void SetObserver(Observer observer) { observer_ = std::move(observer); }

  netsim::RelayQueue& RelayQueueAt(netsim::NodeId anchor);
  const std::map<netsim::NodeId, std::unique_ptr<netsim::RelayQueue>>&
  relay_queues() const {
    return relay_queues_;
  }
  const PttParams& params() const { return params_; }

 private:
  enum class ClientState { kIdle, kRequesting, kTalking };
  struct Client {
    ClientState state = ClientState::kIdle;
    bool floor_busy = false;
    std::uint64_t epoch = 0;
    bool penalty_armed = false;
  };
  using SessionRef = std::pair<std::string, std::uint64_t>;

  CallSession* Find(const SessionRef& ref);
  SessionRef Ref(const CallSession& s) const {
    return {s.group_id_, s.incarnation_};
  }
  netsim::NodeId Anchor(const CallSession& s) const;
  netsim::RelayQueue& QueueFor(netsim::NodeId ue);
  // One-way control delay between the UE and the arbitration point.
  Micros ControlDelay(const CallSession& s, netsim::NodeId ue);
  int UeNumber(netsim::NodeId ue) const;
  int UsersPerTeam(int team) const;
  void Emit(FloorEvent::Kind kind, const CallSession& s, netsim::NodeId ue);

  void OnRequestArrival(const SessionRef& ref, FloorRequest request);
  void IssueGrant(CallSession& s, const FloorRequest& request);
  void OnGrantReceived(const SessionRef& ref, FloorRequest request,
                       std::uint64_t epoch);
  void OnFloorNotice(netsim::NodeId ue, std::uint64_t epoch, bool busy);
  void OnPacket(const SessionRef& ref, netsim::NodeId talker);
  void OnSpurtEnd(const SessionRef& ref, netsim::NodeId talker);
  void OnReleaseArrival(const SessionRef& ref, netsim::NodeId talker);
  void OnTalkDesire(const SessionRef& ref, netsim::NodeId ue);

  netsim::EventQueue& events_;
  netsim::Topology& topology_;
  PttParams params_;
  Rng& rng_;
  KpiStore& kpis_;
  RunTags tags_;
  std::map<std::string, CallSession, std::less<>> sessions_;
  std::map<netsim::NodeId, Client> clients_;
  std::map<netsim::NodeId, std::unique_ptr<netsim::RelayQueue>> relay_queues_;
  std::uint64_t next_incarnation_ = 1;
  SpurtSource spurt_source_;
  Observer observer_;
};

}  // namespace ibnptt::ptt

#endif  // IBNPTT_PTT_SERVICE_PTT_SERVICE_H_
