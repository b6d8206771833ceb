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

#include "npcfuzz/perception.h"

#include <cmath>

#include "npcfuzz/errors.h"

namespace npcfuzz {

std::string_view ZoneName(Zone zone) {
  switch (zone) {
    case Zone::kNotDetected: return "NotDetected";
    case Zone::kN1: return "N1";
    case Zone::kF1: return "F1";
    case Zone::kL1: return "L1";
    case Zone::kL2: return "L2";
    case Zone::kL3: return "L3";
    case Zone::kR1: return "R1";
    case Zone::kR2: return "R2";
    case Zone::kR3: return "R3";
  }
  return "?";
}

std::optional<Zone> ZoneFromName(std::string_view name) {
  for (Zone z : kAllZones) {
    if (ZoneName(z) == name) return z;
  }
  return std::nullopt;
}

Zone ClassifyZone(double x, double y, double ell, double lane_width) {
  if (std::abs(x) > 1.5 * ell || std::abs(y) > 1.5 * lane_width) {
    return Zone::kNotDetected;
  }
  if (std::abs(y) <= 0.5 * lane_width) {
    return x > 0.0 ? Zone::kF1 : Zone::kN1;
  }
  const bool left = y < 0.0;
  if (x < -0.5 * ell) return left ? Zone::kL1 : Zone::kR1;
  if (x > 0.5 * ell) return left ? Zone::kL3 : Zone::kR3;
  return left ? Zone::kL2 : Zone::kR2;
}

Zone DetectEgo(const VehicleState& npc, const VehicleState& ego, double ell,
               double lane_width) {
  if (!(ell > 0.0) || !(lane_width > 0.0)) {
    throw Error(ErrorCode::kPrecondition, "zone sizes must be positive");
  }
  const Point delta = ego.position - npc.position;
  const double x = Dot(delta, HeadingVector(npc.heading));
  const double y = Dot(delta, RightVector(npc.heading));
  return ClassifyZone(x, y, ell, lane_width);
}

}  // namespace npcfuzz
