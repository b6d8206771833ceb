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

#pragma once

#include <string_view>
#include <optional>
#include <vector>

#include "npcfuzz/perception.h"
#include "npcfuzz/rng.h"

namespace npcfuzz {

enum class ManeuverKind {
  kKeepSpeed,
  kAccelerationStraight,
  kDecelerationStraight,
  kLeftChange,
  kRightChange,
};

enum class ManeuverStatus { kIdle, kRunning };

inline constexpr ManeuverKind kAllManeuvers[] = {
    ManeuverKind::kKeepSpeed, ManeuverKind::kAccelerationStraight,
    ManeuverKind::kDecelerationStraight, ManeuverKind::kLeftChange,
    ManeuverKind::kRightChange};

std::string_view ManeuverName(ManeuverKind kind);
std::optional<ManeuverKind> ManeuverFromName(std::string_view name);
std::string_view StatusName(ManeuverStatus status);
std::optional<ManeuverStatus> StatusFromName(std::string_view name);

inline bool IsLaneChange(ManeuverKind kind) {
  return kind == ManeuverKind::kLeftChange || kind == ManeuverKind::kRightChange;
}

/// Which neighbouring lanes exist for the ticking NPC. Lane-change actions
/// toward a missing lane fail.
struct LaneAvailability {
  bool left = true;
  bool right = true;
};

enum class NodeStatus { kSuccess, kFailure };

class BehaviorTree {
 public:
  struct Node {
    enum class Type { kSequence, kSelector, kCondition, kAction };
    Type type = Type::kAction;
    std::vector<Node> children;
    Zone zone = Zone::kNotDetected;             // kCondition
    ManeuverKind action = ManeuverKind::kKeepSpeed;  // kAction
  };

  /// Children ticked in order; fails on the first failing child.
  static Node Sequence(std::vector<Node> children);
  /// Children ticked in a random order until one succeeds.
  static Node Selector(std::vector<Node> children);
  static Node Condition(Zone zone);
  static Node Action(ManeuverKind kind);

  /// Throws kStructure for empty composites, leaves with children, or a
  /// non-composite root.
  explicit BehaviorTree(Node root);

  /// Policy for main-lane adversarial NPCs: NotDetected/F1 keep speed,
  /// L1/R1 randomly keep or change toward the EGO, L2/R2 change toward the
  /// EGO, L3/R3 accelerate, N1 decelerate.
  static BehaviorTree Default();

  /// Returns the selected maneuver. A tick where the root fails (e.g. the
  /// only permitted lane change has no target lane) yields KEEP_SPEED.
  ManeuverKind Tick(Zone zone, Rng& rng, LaneAvailability lanes = {}) const;

  const Node& root() const { return root_; }

 private:
  Node root_;
};

ManeuverKind TickBehaviorTree(const BehaviorTree& tree, Zone zone, Rng& rng,
                              LaneAvailability lanes = {});

}  // namespace npcfuzz
