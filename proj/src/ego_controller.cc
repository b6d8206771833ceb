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

#include "npcfuzz/ego_controller.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "npcfuzz/errors.h"

namespace npcfuzz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Neighbour {
  const VehicleState* state;
  int lane;
  double gap;  // signed bumper gap along s; positive ahead of the EGO
};

double BumperGap(const VehicleState& ego, const VehicleState& other) {
  const double ds = other.position.s - ego.position.s;
  const double half = 0.5 * (ego.length + other.length);
  return ds >= 0.0 ? ds - half : ds + half;
}

std::optional<Neighbour> LeaderIn(std::span<const Neighbour> nbrs, int lane,
                                  const VehicleState& ego) {
  std::optional<Neighbour> best;
  for (const Neighbour& n : nbrs) {
    if (n.lane != lane || n.state->position.s <= ego.position.s) continue;
    if (!best || n.gap < best->gap) best = n;
  }
  return best;
}

}  // namespace

double IdmAcceleration(const EgoParams& p, double v, double gap, double leader_v) {
  const double free = 1.0 - std::pow(v / p.desired_speed, p.exponent);
  if (!std::isfinite(gap)) return p.accel * free;
  const double dv = v - leader_v;
  const double desired = p.min_gap + std::max(
      0.0, v * p.time_headway + v * dv / (2.0 * std::sqrt(p.accel * p.comfort_decel)));
  const double g = std::max(gap, 0.1);
  return p.accel * (free - (desired / g) * (desired / g));
}

DriveCommand BaselineEgo::Decide(const VehicleState& ego,
                               std::span<const VehicleState> npcs,
                               Point destination, const RoadModel& road) const {
  const EgoParams& p = params_;
  const int lane = road.LaneAt(ego.position.d);
  const int dest_lane = road.LaneAt(destination.d);

  std::vector<Neighbour> nbrs;
  for (const VehicleState& n : npcs) {
    if (std::abs(n.position.s - ego.position.s) > p.perception_range) continue;
    nbrs.push_back({&n, road.LaneAt(n.position.d), BumperGap(ego, n)});
  }
  std::stable_sort(nbrs.begin(), nbrs.end(), [](const Neighbour& a, const Neighbour& b) {
    return std::abs(a.gap) < std::abs(b.gap);
  });

  auto lane_clear = [&](int l) {
    for (const Neighbour& n : nbrs) {
      if (n.lane != l) continue;
      if (n.gap >= 0.0 && n.gap < p.front_gap) return false;
      if (n.gap < 0.0 && -n.gap < p.rear_gap) return false;
    }
    return true;
  };
  auto blocked = [&](int l) {
    const auto leader = LeaderIn(nbrs, l, ego);
    return leader && leader->state->speed < p.blocked_speed &&
           leader->gap < p.blocked_gap;
  };

  // Keep turning into the lane we are already heading for.
  int target_lane = lane;
  const double offset = ego.position.d - road.Centerline(lane);
  const bool committed = std::abs(offset) > p.commit_offset &&
                         std::abs(ego.heading) > 0.02 && offset * ego.heading > 0.0;
  if (committed) {
    const int next = lane + (offset > 0.0 ? 1 : -1);
    if (road.HasLane(next)) target_lane = next;
  } else if (allow_lane_change_) {
    if (dest_lane != lane) {
      const int step = lane + (dest_lane > lane ? 1 : -1);
      if (lane_clear(step) && !blocked(step)) target_lane = step;
    } else if (blocked(lane)) {
      for (int cand : {lane - 1, lane + 1}) {
        if (road.HasLane(cand) && lane_clear(cand) && !blocked(cand)) {
          target_lane = cand;
          break;
        }
      }
    }
  }

  // Follow the nearest leader in the current lane, and in the target lane
  // while changing.
  double accel = IdmAcceleration(p, ego.speed, kInf, 0.0);
  auto follow = [&](int l) {
    if (const auto leader = LeaderIn(nbrs, l, ego)) {
      accel = std::min(accel, IdmAcceleration(p, ego.speed, leader->gap,
                                              leader->state->speed));
    }
  };
  follow(lane);
  if (target_lane != lane) follow(target_lane);
  double speed = std::clamp(ego.speed + accel * kFrameDt, 0.0, p.max_speed);
  const double to_go = std::max(0.0, destination.s - ego.position.s);
  speed = std::min(speed, std::sqrt(2.0 * p.arrival_decel * to_go));

  const double ahead = target_lane == lane
                           ? std::max(p.lookahead_min, p.lookahead_time * ego.speed)
                           : std::max(p.change_lookahead, 1.2 * ego.speed);
  const double target_d = road.Centerline(target_lane);
  return {{ego.position.s + ahead, target_d}, speed};
}

std::unique_ptr<EgoController> MakeEgoController(std::string_view name) {
  if (name == "baseline") return std::make_unique<BaselineEgo>();
  if (name == "lane-keeper") return std::make_unique<LaneKeeperEgo>();
  throw Error(ErrorCode::kUsage, "unknown EGO controller: " + std::string(name));
}

std::vector<std::string> EgoControllerNames() { return {"baseline", "lane-keeper"}; }

}  // namespace npcfuzz
