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
#include <optional>

#include "npcfuzz/behavior_tree.h"
#include "npcfuzz/kinematics.h"
#include "npcfuzz/perception.h"
#include "npcfuzz/rng.h"
#include "npcfuzz/road_model.h"
#include "npcfuzz/trajectory.h"

namespace npcfuzz {

struct NpcParams {
  double initial_speed = 8.0;      // m/s
  double completion_radius = 1.0;  // m to the final waypoint
  double completion_grace = 3.0;   // s past the planned duration
  double lookahead_min = 4.0;      // m
  double lookahead_time = 0.5;     // s
  // ACCELERATION_STRAIGHT: rate and gain above the current speed, at least
  // `accel_margin` above the EGO.
  double accel_rate_min = 1.5;
  double accel_rate_max = 3.5;
  double accel_gain_min = 3.0;
  double accel_gain_max = 8.0;
  double accel_margin = 3.0;
  // DECELERATION_STRAIGHT: rate and final fraction of the current speed.
  double decel_rate_min = 2.0;
  double decel_rate_max = 6.0;
  double decel_ratio_min = 0.2;
  double decel_ratio_max = 0.6;
  // Braking envelope toward the road end.
  double end_decel = 6.0;
  double end_margin = 3.0;         // m between the stop point and the road end
};

/// A planned trajectory being executed.
struct ManeuverPlan {
  WaypointPath path;
  SpeedProfile profile;
  int steps = 0;          // frames since the plan started
  double progress = 0.0;  // arc length reached
  size_t hint = 0;        // segment index for projection
};

/// Maneuver with its status; `plan` is present iff status is RUNNING.
struct Maneuver {
  ManeuverKind kind = ManeuverKind::kKeepSpeed;
  ManeuverStatus status = ManeuverStatus::kIdle;
  std::optional<ManeuverPlan> plan;
};

/// One adversarial NPC: perceives the EGO, picks a maneuver from the
/// behaviour tree when idle, plans waypoints and speeds, and tracks the plan.
class AdversarialNpc {
 public:
  AdversarialNpc(const VehicleState& initial, uint64_t seed,
                 const NpcParams& params = {},
                 const PlannerParams& planner = {});

  const VehicleState& state() const { return state_; }
  const Maneuver& maneuver() const { return maneuver_; }
  bool wrecked() const { return wrecked_; }
  /// Zone seen at the last decision (NotDetected before monitoring starts).
  Zone last_zone() const { return last_zone_; }

  /// Decision phase. Runs only when idle. With `monitoring` false the NPC
  /// keeps cruising without a plan. Planning failures degrade to
  /// KEEP_SPEED; if even that cannot be planned the NPC stays idle.
  void Decide(const VehicleState& ego, const RoadModel& road,
              const BehaviorTree& tree, double ell, bool monitoring);

  /// Command for the coming step.
  DriveCommand Control(const RoadModel& road) const;

  /// Adopts the post-step state and polls maneuver completion.
  void Advance(const VehicleState& next);

  /// Stops the NPC in place for the rest of the run.
  void Wreck();

 private:
  SpeedProfile ProfileFor(ManeuverKind kind, const WaypointPath& path,
                          const VehicleState& ego);
  double EndEnvelope(const RoadModel& road) const;

  VehicleState state_;
  Rng rng_;
  NpcParams params_;
  PlannerParams planner_;
  Maneuver maneuver_;
  Zone last_zone_ = Zone::kNotDetected;
  bool wrecked_ = false;
};

}  // namespace npcfuzz
