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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "npcfuzz/adversarial_npc.h"
#include "npcfuzz/behavior_tree.h"
#include "npcfuzz/ego_controller.h"
#include "npcfuzz/kinematics.h"
#include "npcfuzz/record.h"
#include "npcfuzz/road_model.h"
#include "npcfuzz/scenario_config.h"
#include "npcfuzz/trajectory.h"

namespace npcfuzz {

/// Test hook: returns a command that replaces NPC `npc_index`'s own control
/// (and its decisions) for the step leaving `frame`, or nullopt to let the
/// agent drive.
using NpcScript = std::function<std::optional<DriveCommand>(
    int npc_index, const VehicleState& npc, int frame)>;

struct ExecutorOptions {
  NpcParams npc;
  PlannerParams planner;
  KinematicLimits limits;
  double ego_initial_speed = 0.0;
  bool allow_empty_npcs = false;
  NpcScript npc_script;
  /// Policy tree; the default policy when null.
  const BehaviorTree* tree = nullptr;
};

/// Runs one scenario. Frame 0 is the initial state; each loop records the
/// frame after the decision phase, then steps every vehicle by 0.1 s from
/// the pre-step states. An EGO-NPC contact ends the run without recording
/// the contact frame. NPC-NPC contacts stop both NPCs in place. At most
/// config.max_frames frames are recorded. Throws kSetup on an invalid
/// config.
SimulationRecord ExecuteScenario(const RoadModel& road, const ScenarioConfig& config,
                                 const EgoController& ego, double ell, uint64_t seed,
                                 const ExecutorOptions& options = {});

/// Collision (from the contact), first illegal-line contact of the EGO box,
/// and DestinationNotReached for completed runs ending farther than half the
/// EGO length from the destination. Sorted by frame.
std::vector<ViolationEvent> DetectViolations(const SimulationRecord& record,
                                             const RoadModel& road);

}  // namespace npcfuzz
