/******************************************************************************
 * Copyright 2026 The npcfuzz Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "npcfuzz/behavior_tree.h"

#include <numeric>

#include "npcfuzz/errors.h"

namespace npcfuzz {

namespace {

using Node = BehaviorTree::Node;

struct TickContext {
  Zone zone;
  Rng* rng;
  LaneAvailability lanes;
  std::optional<ManeuverKind> selected;
};

NodeStatus TickNode(const Node& node, TickContext* ctx) {
  switch (node.type) {
    case Node::Type::kCondition:
      return node.zone == ctx->zone ? NodeStatus::kSuccess : NodeStatus::kFailure;
    case Node::Type::kAction:
      if ((node.action == ManeuverKind::kLeftChange && !ctx->lanes.left) ||
          (node.action == ManeuverKind::kRightChange && !ctx->lanes.right)) {
        return NodeStatus::kFailure;
      }
      ctx->selected = node.action;
      return NodeStatus::kSuccess;
    case Node::Type::kSequence: {
      const auto entry = ctx->selected;
      for (const Node& child : node.children) {
        if (TickNode(child, ctx) == NodeStatus::kFailure) {
          ctx->selected = entry;  // a failed branch selects nothing
          return NodeStatus::kFailure;
        }
      }
      return NodeStatus::kSuccess;
    }
    case Node::Type::kSelector: {
      std::vector<size_t> order(node.children.size());
      std::iota(order.begin(), order.end(), size_t{0});
      ctx->rng->Shuffle(&order);
      const auto entry = ctx->selected;
      for (size_t i : order) {
        if (TickNode(node.children[i], ctx) == NodeStatus::kSuccess) {
          return NodeStatus::kSuccess;
        }
        ctx->selected = entry;
      }
      return NodeStatus::kFailure;
    }
  }
  return NodeStatus::kFailure;
}

void Validate(const Node& node) {
  const bool composite = node.type == Node::Type::kSequence ||
                         node.type == Node::Type::kSelector;
  if (composite && node.children.empty()) {
    throw Error(ErrorCode::kStructure, "composite node without children");
  }
  if (!composite && !node.children.empty()) {
    throw Error(ErrorCode::kStructure, "leaf node with children");
  }
  for (const Node& child : node.children) Validate(child);
}

Node Branch(Zone zone, Node action) {
  return BehaviorTree::Sequence(
      {BehaviorTree::Condition(zone), std::move(action)});
}

}  // namespace

std::string_view ManeuverName(ManeuverKind kind) {
  switch (kind) {
    case ManeuverKind::kKeepSpeed: return "KEEP_SPEED";
    case ManeuverKind::kAccelerationStraight: return "ACCELERATION_STRAIGHT";
    case ManeuverKind::kDecelerationStraight: return "DECELERATION_STRAIGHT";
    case ManeuverKind::kLeftChange: return "LEFT_CHANGE";
    case ManeuverKind::kRightChange: return "RIGHT_CHANGE";
  }
  return "?";
}

std::optional<ManeuverKind> ManeuverFromName(std::string_view name) {
  for (ManeuverKind k : kAllManeuvers) {
    if (ManeuverName(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view StatusName(ManeuverStatus status) {
  return status == ManeuverStatus::kIdle ? "IDLE" : "RUNNING";
}

std::optional<ManeuverStatus> StatusFromName(std::string_view name) {
  if (name == "IDLE") return ManeuverStatus::kIdle;
  if (name == "RUNNING") return ManeuverStatus::kRunning;
  return std::nullopt;
}

Node BehaviorTree::Sequence(std::vector<Node> children) {
  Node n;
  n.type = Node::Type::kSequence;
  n.children = std::move(children);
  return n;
}

Node BehaviorTree::Selector(std::vector<Node> children) {
  Node n;
  n.type = Node::Type::kSelector;
  n.children = std::move(children);
  return n;
}

Node BehaviorTree::Condition(Zone zone) {
  Node n;
  n.type = Node::Type::kCondition;
  n.zone = zone;
  return n;
}

Node BehaviorTree::Action(ManeuverKind kind) {
  Node n;
  n.type = Node::Type::kAction;
  n.action = kind;
  return n;
}

BehaviorTree::BehaviorTree(Node root) : root_(std::move(root)) {
  if (root_.type != Node::Type::kSequence &&
      root_.type != Node::Type::kSelector) {
    throw Error(ErrorCode::kStructure, "root must be a composite node");
  }
  Validate(root_);
}

BehaviorTree BehaviorTree::Default() {
  using K = ManeuverKind;
  return BehaviorTree(Selector({
      Branch(Zone::kNotDetected, Action(K::kKeepSpeed)),
      Branch(Zone::kN1, Action(K::kDecelerationStraight)),
      Branch(Zone::kF1, Action(K::kKeepSpeed)),
      Branch(Zone::kL1, Selector({Action(K::kKeepSpeed), Action(K::kLeftChange)})),
      Branch(Zone::kL2, Action(K::kLeftChange)),
      Branch(Zone::kL3, Action(K::kAccelerationStraight)),
      Branch(Zone::kR1, Selector({Action(K::kKeepSpeed), Action(K::kRightChange)})),
      Branch(Zone::kR2, Action(K::kRightChange)),
      Branch(Zone::kR3, Action(K::kAccelerationStraight)),
  }));
}

ManeuverKind BehaviorTree::Tick(Zone zone, Rng& rng,
                                LaneAvailability lanes) const {
  TickContext ctx{zone, &rng, lanes, std::nullopt};
  if (TickNode(root_, &ctx) == NodeStatus::kSuccess && ctx.selected) {
    return *ctx.selected;
  }
  return ManeuverKind::kKeepSpeed;
}

ManeuverKind TickBehaviorTree(const BehaviorTree& tree, Zone zone, Rng& rng,
                              LaneAvailability lanes) {
  return tree.Tick(zone, rng, lanes);
}

}  // namespace npcfuzz
