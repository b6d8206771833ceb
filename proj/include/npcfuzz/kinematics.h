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

#include <numbers>

#include "npcfuzz/geometry.h"

namespace npcfuzz {

/// Simulation step; one frame is a tenth of a second.
inline constexpr double kFrameDt = 0.1;

enum class VehicleKind { kEgo, kNpc };

struct BoxDims {
  double length = 4.7;
  double width = 2.0;
};

inline constexpr BoxDims kEgoDims{4.7, 2.0};
inline constexpr BoxDims kNpcDims{4.5, 1.9};

struct VehicleState {
  int id = 0;
  VehicleKind kind = VehicleKind::kNpc;
  Point position;  // box center
  double heading = 0.0;
  double speed = 0.0;
  double length = kNpcDims.length;
  double width = kNpcDims.width;

  OrientedBox Box() const { return {position, heading, length, width}; }

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

/// Per-step intent for any vehicle: steer toward `target`, approach `speed`.
struct DriveCommand {
  Point target;
  double speed = 0.0;
};

struct KinematicLimits {
  double max_accel = 4.0;   // m/s^2
  double max_decel = 8.0;   // m/s^2, magnitude
  double max_yaw_rate = 0.5;  // rad/s
  double max_heading = std::numbers::pi / 3.0;  // relative to the road axis
};

/// Advances one vehicle toward `target_point` at a speed moved toward
/// `target_speed` within the acceleration limits. The heading turns toward
/// the target bearing under the yaw-rate limit, then the vehicle moves
/// v' * dt along the new heading. Throws kNumeric on non-finite input and
/// kPrecondition on dt <= 0 or a negative target speed.
VehicleState StepVehicle(const VehicleState& state, Point target_point,
                         double target_speed, double dt,
                         const KinematicLimits& limits = {});

}  // namespace npcfuzz
