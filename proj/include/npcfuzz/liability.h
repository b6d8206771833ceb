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

#include <span>
#include <vector>

#include "npcfuzz/record.h"
#include "npcfuzz/road_model.h"

namespace npcfuzz {

inline constexpr int kSwitchWindow = 30;  // frames

/// True when the EGO occupied at least two different lanes over the last
/// `window` recorded frames. Straddling frames (and frames with the EGO
/// centre off the road) carry no lane.
bool Switched(const SimulationRecord& record, const RoadModel& road,
              int window = kSwitchWindow);

/// Rear-end rule: both boxes inside the same lane with the EGO ahead along
/// the NPC's heading -> NPC_Fault. Lane-change rule: the NPC is running a
/// lane change while the EGO kept its lane -> NPC_Fault. Otherwise
/// EGO_Fault. Uses the last recorded frame. Throws kNotApplicable unless
/// `violation` indexes an EGO-NPC collision.
FaultVerdict DetermineLiability(const SimulationRecord& record, int violation,
                                const RoadModel& road);

/// Verdicts for every collision in the record.
std::vector<FaultVerdict> AssessRecord(const SimulationRecord& record,
                                       const RoadModel& road);

struct EgoFault {
  size_t record = 0;     // index into the input span
  int violation = 0;     // index into that record's violations
  ViolationKind kind = ViolationKind::kCollision;
};

/// Collisions judged EGO_Fault (from each record's stored verdicts) plus
/// every IllegalLineCross and DestinationNotReached event.
std::vector<EgoFault> EgoFaultSet(std::span<const SimulationRecord> records);

}  // namespace npcfuzz
