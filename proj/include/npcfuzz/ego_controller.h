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

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "npcfuzz/kinematics.h"
#include "npcfuzz/road_model.h"

namespace npcfuzz {

/// Decision function for the vehicle under test. Implementations must be
/// stateless: the command depends only on the arguments.
class EgoController {
 public:
  virtual ~EgoController() = default;
  virtual std::string_view name() const = 0;
  virtual DriveCommand Decide(const VehicleState& ego,
                            std::span<const VehicleState> npcs,
                            Point destination, const RoadModel& road) const = 0;
};

struct EgoParams {
  // Intelligent-driver model.
  double min_gap = 2.0;        // s0, m
  double time_headway = 1.5;   // T, s
  double accel = 2.0;          // a, m/s^2
  double comfort_decel = 3.0;  // b, m/s^2
  double exponent = 4.0;       // delta
  double desired_speed = 14.0;
  double max_speed = 16.0;
  // Lane changes.
  double front_gap = 15.0;     // m, bumper to bumper in the target lane
  double rear_gap = 10.0;
  double blocked_speed = 7.0;  // leader slower than this ...
  double blocked_gap = 25.0;   // ... and closer than this blocks the lane
  double commit_offset = 0.35;  // m off the centerline while turning
  // Steering and perception.
  double lookahead_min = 6.0;
  double lookahead_time = 0.8;
  double change_lookahead = 14.0;
  double perception_range = 100.0;
  double arrival_decel = 3.0;
};

/// IDM car following on the current lane with gap-checked lane changes
/// toward the destination lane or around a slow leader. The leader is the
/// nearest NPC ahead whose centre lies in the EGO's lane, so a cut-in is only
/// seen once the NPC's centre crosses the lane line.
class BaselineEgo : public EgoController {
 public:
  explicit BaselineEgo(EgoParams params = {}) : params_(params) {}
  std::string_view name() const override { return "baseline"; }
  DriveCommand Decide(const VehicleState& ego, std::span<const VehicleState> npcs,
                    Point destination, const RoadModel& road) const override;
  const EgoParams& params() const { return params_; }

 protected:
  EgoParams params_;
  bool allow_lane_change_ = true;
};

/// Same car following, never leaves its lane.
class LaneKeeperEgo : public BaselineEgo {
 public:
  explicit LaneKeeperEgo(EgoParams params = {}) : BaselineEgo(params) {
    allow_lane_change_ = false;
  }
  std::string_view name() const override { return "lane-keeper"; }
};

/// IDM acceleration for a follower at speed v with gap `gap` behind a leader
/// at speed `leader_v`; pass an infinite gap for a free road.
double IdmAcceleration(const EgoParams& p, double v, double gap, double leader_v);

/// Registered controllers by name; throws kUsage for unknown names.
std::unique_ptr<EgoController> MakeEgoController(std::string_view name);
std::vector<std::string> EgoControllerNames();

}  // namespace npcfuzz
