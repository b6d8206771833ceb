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

#include "npcfuzz/kinematics.h"

#include <algorithm>
#include <cmath>

#include "npcfuzz/errors.h"

namespace npcfuzz {

VehicleState StepVehicle(const VehicleState& state, Point target_point,
                         double target_speed, double dt,
                         const KinematicLimits& limits) {
  if (!IsFinite(state.position) || !std::isfinite(state.heading) ||
      !std::isfinite(state.speed) || !IsFinite(target_point) ||
      !std::isfinite(target_speed) || !std::isfinite(dt)) {
    throw Error(ErrorCode::kNumeric, "non-finite vehicle step input");
  }
  if (dt <= 0.0 || target_speed < 0.0) {
    throw Error(ErrorCode::kPrecondition,
                "step requires dt > 0 and target_speed >= 0");
  }

  VehicleState next = state;
  const double dv = std::clamp(target_speed - state.speed,
                               -limits.max_decel * dt, limits.max_accel * dt);
  next.speed = std::max(0.0, state.speed + dv);

  const Point to_target = target_point - state.position;
  if (Norm(to_target) > 1e-9) {
    const double bearing = std::atan2(to_target.d, to_target.s);
    const double max_turn = limits.max_yaw_rate * dt;
    const double turn = std::clamp(NormalizeAngle(bearing - state.heading),
                                   -max_turn, max_turn);
    next.heading = std::clamp(state.heading + turn, -limits.max_heading,
                              limits.max_heading);
  }
  next.position = state.position + (next.speed * dt) * HeadingVector(next.heading);
  return next;
}

}  // namespace npcfuzz
