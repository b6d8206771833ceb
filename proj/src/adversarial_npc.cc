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

#include "npcfuzz/adversarial_npc.h"

#include <algorithm>
#include <cmath>

#include "npcfuzz/errors.h"

namespace npcfuzz {

AdversarialNpc::AdversarialNpc(const VehicleState& initial, uint64_t seed,
                               const NpcParams& params,
                               const PlannerParams& planner)
    : state_(initial), rng_(seed), params_(params), planner_(planner) {}

SpeedProfile AdversarialNpc::ProfileFor(ManeuverKind kind,
                                        const WaypointPath& path,
                                        const VehicleState& ego) {
  const double v = state_.speed;
  switch (kind) {
    case ManeuverKind::kKeepSpeed:
      return RampProfile(path, v, v, 0.0, planner_);
    case ManeuverKind::kAccelerationStraight: {
      const double rate = rng_.Uniform(params_.accel_rate_min, params_.accel_rate_max);
      const double gain = rng_.Uniform(params_.accel_gain_min, params_.accel_gain_max);
      const double target = std::min(
          std::max(planner_.speed_cap, v),
          std::max(v + gain, ego.speed + params_.accel_margin));
      return RampProfile(path, v, target, rate, planner_);
    }
    case ManeuverKind::kDecelerationStraight: {
      const double rate = rng_.Uniform(params_.decel_rate_min, params_.decel_rate_max);
      const double ratio = rng_.Uniform(params_.decel_ratio_min, params_.decel_ratio_max);
      return RampProfile(path, v, v * ratio, rate, planner_);
    }
    case ManeuverKind::kLeftChange:
    case ManeuverKind::kRightChange:
      return PlanSpeed(path, state_, ego, planner_.horizon, planner_);
  }
  return RampProfile(path, v, v, 0.0, planner_);
}

void AdversarialNpc::Decide(const VehicleState& ego, const RoadModel& road,
                            const BehaviorTree& tree, double ell,
                            bool monitoring) {
  if (wrecked_ || maneuver_.status == ManeuverStatus::kRunning || !monitoring) {
    return;
  }
  last_zone_ = DetectEgo(state_, ego, ell, road.lane_width());
  const int lane = road.LaneAt(state_.position.d);
  const LaneAvailability lanes{road.HasLane(lane - 1), road.HasLane(lane + 1)};
  ManeuverKind kind = tree.Tick(last_zone_, rng_, lanes);

  for (int pass = 0; pass < 2; ++pass) {
    try {
      WaypointPath path = PlanWaypoints(state_, kind, road, rng_, planner_);
      SpeedProfile profile = ProfileFor(kind, path, ego);
      maneuver_.kind = kind;
      maneuver_.status = ManeuverStatus::kRunning;
      maneuver_.plan = ManeuverPlan{std::move(path), std::move(profile), 0, 0.0, 0};
      return;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPlanningFailure) throw;
      if (kind == ManeuverKind::kKeepSpeed) break;
      kind = ManeuverKind::kKeepSpeed;
    }
  }
  maneuver_ = Maneuver{};
}

double AdversarialNpc::EndEnvelope(const RoadModel& road) const {
  const double room =
      road.length() - params_.end_margin - state_.position.s;
  return std::sqrt(2.0 * params_.end_decel * std::max(0.0, room));
}

DriveCommand AdversarialNpc::Control(const RoadModel& road) const {
  if (wrecked_) return {state_.position, 0.0};
  const double ahead =
      std::max(params_.lookahead_min, params_.lookahead_time * state_.speed);
  const double envelope = EndEnvelope(road);
  if (!maneuver_.plan) {
    const int lane = road.LaneAt(state_.position.d);
    return {{state_.position.s + ahead, road.Centerline(lane)},
            std::min(state_.speed, envelope)};
  }
  const ManeuverPlan& plan = *maneuver_.plan;
  const auto& st = plan.profile.st;
  const size_t next = std::min(static_cast<size_t>(plan.steps) + 1, st.size() - 1);
  return {plan.path.At(plan.progress + ahead), std::min(st[next].v, envelope)};
}

void AdversarialNpc::Advance(const VehicleState& next) {
  state_ = next;
  if (!maneuver_.plan) return;
  ManeuverPlan& plan = *maneuver_.plan;
  ++plan.steps;
  plan.progress = plan.path.Project(state_.position, &plan.hint);
  const bool arrived =
      Distance(state_.position, plan.path.points().back()) <= params_.completion_radius;
  const bool consumed = plan.progress >= plan.path.length();
  const bool timed_out =
      plan.steps * kFrameDt >= plan.profile.duration + params_.completion_grace;
  if (arrived || consumed || timed_out) {
    maneuver_.status = ManeuverStatus::kIdle;
    maneuver_.plan.reset();
  }
}

void AdversarialNpc::Wreck() {
  wrecked_ = true;
  state_.speed = 0.0;
  maneuver_.status = ManeuverStatus::kIdle;
  maneuver_.plan.reset();
}

}  // namespace npcfuzz
