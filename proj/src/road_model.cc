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

#include "npcfuzz/road_model.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "npcfuzz/errors.h"

namespace npcfuzz {

const char* LineKindName(LineKind kind) {
  return kind == LineKind::kYellow ? "yellow" : "edge";
}

int RoadModel::LaneAt(double d) const {
  const int lane = static_cast<int>(std::floor(d / spec_.lane_width_m));
  return std::clamp(lane, 0, spec_.lanes - 1);
}

RoadModel BuildRoad(const RoadSpec& spec) {
  const bool finite = std::isfinite(spec.lane_width_m) &&
                      std::isfinite(spec.length_m) &&
                      std::isfinite(spec.bubble_offset_m) &&
                      std::isfinite(spec.bubble_length_m);
  if (!finite || spec.lanes < 1 || spec.lane_width_m <= 0.0 ||
      spec.length_m <= 0.0 || spec.bubble_offset_m <= 0.0 ||
      spec.bubble_length_m <= 0.0) {
    throw Error(ErrorCode::kInvalidGeometry,
                "road dimensions must be finite and positive");
  }
  if (spec.bubble_offset_m + spec.bubble_length_m > spec.length_m) {
    throw Error(ErrorCode::kInvalidGeometry, "bubble exceeds road length");
  }
  RoadModel road;
  road.spec_ = spec;
  road.lines_.push_back(
      {0.0, spec.yellow_line ? LineKind::kYellow : LineKind::kEdge});
  road.lines_.push_back({road.width(), LineKind::kEdge});
  return road;
}

RoadModel BuildRoad(int lane_count, double lane_width, double road_length,
                    double bubble_offset, double bubble_length,
                    bool yellow_line) {
  return BuildRoad(RoadSpec{lane_count, lane_width, road_length, bubble_offset,
                            bubble_length, yellow_line});
}

std::optional<RoadSpec> RoadPreset(const std::string& name) {
  if (name == "urban2") return RoadSpec{2, 3.5, 500.0, 50.0, 300.0, true};
  if (name == "highway4") return RoadSpec{4, 3.5, 600.0, 50.0, 300.0, false};
  return std::nullopt;
}

LaneAssignment LaneOfBox(const RoadModel& road, const OrientedBox& box) {
  if (!IsFinite(box.center) || !road.Contains(box.center)) {
    throw Error(ErrorCode::kOutOfRoad, "box center outside the road");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Point& c : box.Corners()) {
    lo = std::min(lo, c.d);
    hi = std::max(hi, c.d);
  }
  const double w = road.lane_width();
  for (int lane = 0; lane < road.lane_count(); ++lane) {
    if (lo > lane * w && hi < (lane + 1) * w) {
      return LaneAssignment::Lane(lane);
    }
  }
  return LaneAssignment::Straddling();
}

double DistanceToIllegalLines(const RoadModel& road, const OrientedBox& box) {
  double best = std::numeric_limits<double>::infinity();
  for (const LineSpec& line : road.illegal_lines()) {
    best = std::min(best, BoxSegmentDistance(box, {0.0, line.offset},
                                             {road.length(), line.offset}));
  }
  return best;
}

}  // namespace npcfuzz
