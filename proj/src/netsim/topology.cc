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

#include "ibnptt/netsim/topology.h"

#include <cmath>
#include <set>

#include "ibnptt/common/error.h"

namespace ibnptt::netsim {

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kOnNetwork:
      return "on-network";
    case Mode::kOffNetworkD2D:
      return "d2d";
    case Mode::kRelay:
      return "relay";
  }
  return "on-network";
}

Mode ParseMode(std::string_view name) {
  if (name == "on-network" || name == "onnetwork") return Mode::kOnNetwork;
  if (name == "d2d" || name == "off-network") return Mode::kOffNetworkD2D;
  if (name == "relay") return Mode::kRelay;
  throw Error(ErrorCode::kParseError, "unknown mode '" + std::string(name) + "'");
}

double Distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

NodeId Topology::AddNode(Node node) {
  node.id = NodeId{static_cast<int>(nodes_.size())};
  if (!node.waypoints.empty() && node.next_waypoint == 0) {
    node.position = node.waypoints.front();
    node.next_waypoint = 1;
  }
  nodes_.push_back(std::move(node));
  return nodes_.back().id;
}

Node& Topology::node(NodeId id) {
  if (id.value < 0 || static_cast<std::size_t>(id.value) >= nodes_.size()) {
    throw Error(ErrorCode::kInvariantViolation,
                "no node with id " + std::to_string(id.value));
  }
  return nodes_[static_cast<std::size_t>(id.value)];
}

const Node& Topology::node(NodeId id) const {
  return const_cast<Topology*>(this)->node(id);
}

std::optional<NodeId> Topology::FindByName(std::string_view name) const {
  for (const auto& n : nodes_) {
    if (n.name == name) return n.id;
  }
  return std::nullopt;
}

NodeId Topology::FindRole(NodeRole role) const {
  for (const auto& n : nodes_) {
    if (n.role == role) return n.id;
  }
  throw Error(ErrorCode::kInvariantViolation, "topology lacks a required role");
}

std::vector<int> Topology::Teams() const {
  std::set<int> teams;
  for (const auto& n : nodes_) {
    if (n.team) teams.insert(*n.team);
  }
  return {teams.begin(), teams.end()};
}

std::vector<NodeId> Topology::TeamUes(int team) const {
  std::vector<NodeId> out;
  for (const auto& n : nodes_) {
    if (n.role == NodeRole::kUe && n.team == team) out.push_back(n.id);
  }
  return out;
}

std::optional<NodeId> Topology::TeamAnchor(int team) const {
  for (const auto& n : nodes_) {
    if (n.role == NodeRole::kUe && n.team == team && n.is_anchor) return n.id;
  }
  return std::nullopt;
}

void Topology::Validate() const {
  for (NodeRole role : {NodeRole::kEnb, NodeRole::kEpc, NodeRole::kPttServer}) {
    int count = 0;
    for (const auto& n : nodes_) count += n.role == role ? 1 : 0;
    if (count != 1) {
      throw Error(ErrorCode::kInvariantViolation,
                  "topology needs exactly one ENB, EPC and PTT server");
    }
  }
  for (int team : Teams()) {
    int anchors = 0;
    for (NodeId id : TeamUes(team)) {
      const Node& n = node(id);
      if (!n.is_anchor) continue;
      ++anchors;
      if (n.speed_mps != 0.0 && n.waypoints.size() > 1) {
        throw Error(ErrorCode::kInvariantViolation,
                    "anchor " + n.name + " must not move");
      }
    }
    if (anchors != 1) {
      throw Error(ErrorCode::kInvariantViolation,
                  "team" + std::to_string(team) + " needs exactly one anchor");
    }
  }
}

Position StepMobility(Node& node, Micros dt) {
  if (node.is_anchor || node.speed_mps <= 0.0 || dt <= Micros(0)) {
    return node.position;
  }
  double budget = node.speed_mps * static_cast<double>(dt.count()) / 1e6;
  while (budget > 0.0 && node.next_waypoint < node.waypoints.size()) {
    const Position target = node.waypoints[node.next_waypoint];
    const double d = Distance(node.position, target);
    if (d <= budget) {
      node.position = target;
      budget -= d;
      ++node.next_waypoint;
    } else {
      node.position.x += (target.x - node.position.x) * budget / d;
      node.position.y += (target.y - node.position.y) * budget / d;
      budget = 0.0;
    }
  }
  return node.position;
}

}  // namespace ibnptt::netsim
