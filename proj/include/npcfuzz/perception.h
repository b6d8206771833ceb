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
#include <string_view>

#include "npcfuzz/kinematics.h"

namespace npcfuzz {

/// Where the EGO sits relative to an NPC. L* zones are on the NPC's left
/// (negative lateral projection), R* on its right; 1 = behind, 2 = alongside,
/// 3 = ahead. N1 is directly behind and F1 directly in front.
enum class Zone { kNotDetected, kN1, kF1, kL1, kL2, kL3, kR1, kR2, kR3 };

inline constexpr Zone kAllZones[] = {Zone::kNotDetected, Zone::kN1, Zone::kF1,
                                     Zone::kL1,          Zone::kL2, Zone::kL3,
                                     Zone::kR1,          Zone::kR2, Zone::kR3};

std::string_view ZoneName(Zone zone);
std::optional<Zone> ZoneFromName(std::string_view name);

/// Classifies a relative position already projected onto the NPC's forward
/// (x) and right (y) axes. Ties: |y| <= w/2 belongs to N1/F1, |x| = ell/2
/// belongs to the middle band, x = 0 inside the lane band is N1.
Zone ClassifyZone(double x, double y, double ell, double lane_width);

/// Projects p_E - p_N onto the NPC's forward/right vectors and classifies.
Zone DetectEgo(const VehicleState& npc, const VehicleState& ego, double ell,
               double lane_width);

}  // namespace npcfuzz
