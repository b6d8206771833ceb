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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "npcfuzz/behavior_tree.h"
#include "npcfuzz/kinematics.h"
#include "npcfuzz/rng.h"
#include "npcfuzz/road_model.h"

namespace npcfuzz {

/// Tunables for waypoint generation and speed planning.
struct PlannerParams {
  double straight_length = 60.0;   // m, straight maneuvers
  double point_spacing = 1.0;      // m, straight segments
  double blend_length = 10.0;      // m, drift back onto the centerline
  double phase1_min = 5.0;         // m, straight run before a lane change
  double phase1_max = 15.0;
  double advance_min = 20.0;       // m, longitudinal span of the curve
  double advance_max = 40.0;
  int bezier_samples = 50;
  int max_attempts = 32;
  double max_point_gap = 2.0;      // m
  double sharp_turn = 0.35;        // rad between consecutive segments
  double max_heading = 1.0471975511965976;  // pi/3
  double control_lateral_min = -0.3;  // fraction of the lateral shift
  double control_lateral_max = 1.3;
  double horizon = 6.0;            // s
  double speed_cap = 20.0;         // m/s
  double occupancy_ds = 0.25;      // m, path sampling for occupancy
  double recovery_accel = 2.0;     // m/s^2 after the occupied window
  double max_profile_time = 60.0;  // s
};

/// Cubic Bezier B(zeta) over four control points.
Point Bezier(const std::array<Point, 4>& control, double zeta);

/// Ordered waypoints with cumulative arc length. Points before
/// `phase_split` are the straight phase; for straight maneuvers
/// phase_split == points.size().
class WaypointPath {
 public:
  WaypointPath() = default;
  WaypointPath(std::vector<Point> points, size_t phase_split);

  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& arc() const { return arc_; }
  size_t phase_split() const { return phase_split_; }
  double length() const { return arc_.empty() ? 0.0 : arc_.back(); }
  bool empty() const { return points_.size() < 2; }

  /// Point at arc length s; beyond the end extrapolates along the last
  /// segment.
  Point At(double s) const;
  /// Arc length of the closest point to p, searching forward from
  /// `*segment_hint` (updated in place).
  double Project(Point p, size_t* segment_hint) const;

  /// Control points of the lane-change curve, when there is one.
  std::optional<std::array<Point, 4>> bezier;

 private:
  std::vector<Point> points_;
  std::vector<double> arc_;
  size_t phase_split_ = 0;
};

// Rejection predicates; each returns true when the path must be discarded.
/// Backward or excessively steep motion (non-positive ds, |heading| > max).
bool HasDirectionInversion(std::span<const Point> points, double max_heading);
/// Any point outside the lateral band [d_lo, d_hi].
bool HasLaneDeparture(std::span<const Point> points, double d_lo, double d_hi);
/// Heading change between consecutive segments above `max_turn`.
bool HasSharpTurn(std::span<const Point> points, double max_turn);

/// Straight kinds: a path ahead along the current lane (clipped at the road
/// end). Lane changes: a straight run then a Bezier curve onto the adjacent
/// lane, resampled until it passes the rejection predicates. Throws
/// kPlanningFailure when there is no target lane, no room, or every attempt
/// is rejected.
WaypointPath PlanWaypoints(const VehicleState& npc, ManeuverKind kind,
                           const RoadModel& road, Rng& rng,
                           const PlannerParams& params = {});

struct StSample {
  double t = 0.0;
  double s = 0.0;
  double v = 0.0;
};

/// [s_begin, s_end] x [t_begin, t_end] on the NPC path that the predicted
/// EGO box covers.
struct OccupiedRegion {
  double s_begin = 0.0;
  double s_end = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
};

struct SpeedProfile {
  std::vector<double> speeds;       // one per waypoint
  std::vector<StSample> st;         // knots every kFrameDt from t = 0
  std::optional<OccupiedRegion> region;
  double duration = 0.0;            // time to reach the path end (or stop)

  /// Speed at arc length s (linear in s between waypoints).
  double SpeedAt(const WaypointPath& path, double s) const;
};

/// Predicts the EGO at constant speed along its heading and collects the
/// path stations covered by its box inflated by half the NPC dimensions.
std::optional<OccupiedRegion> ComputeOccupiedRegion(
    const WaypointPath& path, const VehicleState& npc, const VehicleState& ego,
    double horizon, const PlannerParams& params = {});

/// s-t speed planning: aims to arrive at s_begin when the EGO first occupies
/// the path; otherwise takes the accel-feasible profile closest to it. Holds
/// speed when nothing is occupied. Throws kPrecondition on an empty path or
/// non-positive horizon.
SpeedProfile PlanSpeed(const WaypointPath& path, const VehicleState& npc,
                       const VehicleState& ego, double horizon,
                       const PlannerParams& params = {},
                       const KinematicLimits& limits = {});

/// Constant-rate change from v0 toward `target`, then hold.
SpeedProfile RampProfile(const WaypointPath& path, double v0, double target,
                         double rate, const PlannerParams& params = {},
                         const KinematicLimits& limits = {});

/// Implied acceleration between consecutive waypoints, (v2^2 - v1^2) / 2ds.
double MaxImpliedAccel(const WaypointPath& path, const SpeedProfile& profile);
double MaxImpliedDecel(const WaypointPath& path, const SpeedProfile& profile);

}  // namespace npcfuzz
