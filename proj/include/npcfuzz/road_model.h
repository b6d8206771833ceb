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

#include <optional>
#include <string>
#include <vector>

#include "npcfuzz/geometry.h"

namespace npcfuzz {

enum class LineKind { kYellow, kEdge };

const char* LineKindName(LineKind kind);

/// A lateral road marking that must not be touched; it runs the whole road
/// length at constant offset d.
struct LineSpec {
  double offset = 0.0;
  LineKind kind = LineKind::kEdge;
};

/// User-facing road parameters, mirroring the campaign config keys.
struct RoadSpec {
  int lanes = 2;
  double lane_width_m = 3.5;
  double length_m = 500.0;
  double bubble_offset_m = 50.0;
  double bubble_length_m = 300.0;
  bool yellow_line = false;

  friend bool operator==(const RoadSpec&, const RoadSpec&) = default;
};

/// Straight multi-lane road segment. Lane 0 is the leftmost lane and its left
/// boundary sits at d = 0. Immutable after construction.
class RoadModel {
 public:
  const RoadSpec& spec() const { return spec_; }
  int lane_count() const { return spec_.lanes; }
  double lane_width() const { return spec_.lane_width_m; }
  double length() const { return spec_.length_m; }
  double width() const { return spec_.lanes * spec_.lane_width_m; }
  double bubble_begin() const { return spec_.bubble_offset_m; }
  double bubble_end() const {
    return spec_.bubble_offset_m + spec_.bubble_length_m;
  }
  const std::vector<LineSpec>& illegal_lines() const { return lines_; }

  bool HasLane(int lane) const { return lane >= 0 && lane < spec_.lanes; }
  double Centerline(int lane) const { return (lane + 0.5) * spec_.lane_width_m; }
  /// Lane whose band contains d, clamped to the road.
  int LaneAt(double d) const;
  bool Contains(Point p) const {
    return p.s >= 0.0 && p.s <= length() && p.d >= 0.0 && p.d <= width();
  }

 private:
  friend RoadModel BuildRoad(const RoadSpec& spec);
  RoadSpec spec_;
  std::vector<LineSpec> lines_;
};

/// Throws kInvalidGeometry on non-positive dimensions or a bubble that does
/// not fit inside the road.
RoadModel BuildRoad(const RoadSpec& spec);
RoadModel BuildRoad(int lane_count, double lane_width, double road_length,
                    double bubble_offset, double bubble_length,
                    bool yellow_line = false);

/// Named presets: "urban2" (2 lanes, yellow left boundary) and "highway4".
std::optional<RoadSpec> RoadPreset(const std::string& name);

/// Either a lane index or "straddling" when the box is not strictly inside a
/// single lane band.
class LaneAssignment {
 public:
  static LaneAssignment Lane(int index) { return LaneAssignment(index); }
  static LaneAssignment Straddling() { return LaneAssignment(-1); }

  bool straddling() const { return lane_ < 0; }
  int lane() const { return lane_; }

  friend bool operator==(const LaneAssignment&, const LaneAssignment&) = default;

 private:
  explicit LaneAssignment(int lane) : lane_(lane) {}
  int lane_;
};

/// Throws kOutOfRoad when the box center lies outside the road.
LaneAssignment LaneOfBox(const RoadModel& road, const OrientedBox& box);

/// Shortest distance from the box to any illegal line; 0 on contact.
double DistanceToIllegalLines(const RoadModel& road, const OrientedBox& box);

}  // namespace npcfuzz
