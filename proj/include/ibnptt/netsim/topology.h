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

#ifndef IBNPTT_NETSIM_TOPOLOGY_H_
#define IBNPTT_NETSIM_TOPOLOGY_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ibnptt/common/sim_time.h"

namespace ibnptt::netsim {

enum class Mode { kOnNetwork, kOffNetworkD2D, kRelay };

// "on-network", "d2d", "relay".
std::string_view ModeName(Mode mode);
// Also accepts "off-network". Throws Error(kParseError).
Mode ParseMode(std::string_view name);

enum class NodeRole { kUe, kEnb, kEpc, kPttServer };

struct NodeId {
  int value = -1;
  auto operator<=>(const NodeId&) const = default;
};

struct Position {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Position&) const = default;
};

double Distance(const Position& a, const Position& b);

struct Node {
  NodeId id;
  std::string name;
  NodeRole role = NodeRole::kUe;
  Position position;
  std::optional<int> team;
  bool is_anchor = false;
  Mode mode = Mode::kOnNetwork;
  double tx_power_dbm = 23.0;
  // Straight-line path; position starts at waypoints[0] when present.
  std::vector<Position> waypoints;
  std::size_t next_waypoint = 0;
  double speed_mps = 0.0;
};

class Topology {
 public:
  // Assigns the id (dense, in insertion order) and returns it.
  NodeId AddNode(Node node);

  Node& node(NodeId id);
  const Node& node(NodeId id) const;
  const std::vector<Node>& nodes() const { return nodes_; }

  std::optional<NodeId> FindByName(std::string_view name) const;
  // Throws Error(kInvariantViolation) if the role is absent.
  NodeId FindRole(NodeRole role) const;

  std::vector<int> Teams() const;
  // All UEs of the team in insertion order.
  std::vector<NodeId> TeamUes(int team) const;
  std::optional<NodeId> TeamAnchor(int team) const;

  // One ENB, one EPC, one PTT server; each team exactly one anchor and the
  // anchor has no mobility. Throws Error(kInvariantViolation).
  void Validate() const;

 private:
  std::vector<Node> nodes_;
};

// Advances the node along its waypoints at constant speed. Anchors and
// nodes at their final waypoint do not move.
Position StepMobility(Node& node, Micros dt);

}  // namespace ibnptt::netsim

#endif  // IBNPTT_NETSIM_TOPOLOGY_H_
