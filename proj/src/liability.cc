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

#include "npcfuzz/liability.h"

#include <set>

#include "npcfuzz/errors.h"

namespace npcfuzz {

namespace {

int LaneIndex(const RoadModel& road, const VehicleState& v) {
  try {
    const LaneAssignment a = LaneOfBox(road, v.Box());
    return a.straddling() ? -1 : a.lane();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kOutOfRoad) throw;
    return -1;
  }
}

const VehicleState* FindVehicle(const Frame& frame, int id) {
  for (const VehicleState& v : frame.vehicles) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

}  // namespace

bool Switched(const SimulationRecord& record, const RoadModel& road, int window) {
  const size_t n = record.frames.size();
  const size_t from = n > static_cast<size_t>(window) ? n - window : 0;
  std::set<int> lanes;
  for (size_t i = from; i < n; ++i) {
    const int lane = LaneIndex(road, record.frames[i].vehicles.front());
    if (lane >= 0) lanes.insert(lane);
  }
  return lanes.size() > 1;
}

FaultVerdict DetermineLiability(const SimulationRecord& record, int violation,
                                const RoadModel& road) {
  if (violation < 0 || violation >= static_cast<int>(record.violations.size())) {
    throw Error(ErrorCode::kNotApplicable, "no such violation");
  }
  const ViolationEvent& event = record.violations[violation];
  if (event.kind != ViolationKind::kCollision || event.participants.size() != 2 ||
      event.participants[0] != 0) {
    throw Error(ErrorCode::kNotApplicable, "not an EGO-NPC collision");
  }
  if (record.frames.empty()) {
    throw Error(ErrorCode::kNotApplicable, "record has no frames");
  }
  const Frame& last = record.frames.back();
  const int npc_id = event.participants[1];
  const VehicleState* ego = FindVehicle(last, 0);
  const VehicleState* npc = FindVehicle(last, npc_id);
  if (!ego || !npc) throw Error(ErrorCode::kNotApplicable, "participant missing");

  FaultVerdict v;
  v.violation = violation;
  v.x = Dot(ego->position - npc->position, HeadingVector(npc->heading));
  v.ego_lane = LaneIndex(road, *ego);
  v.npc_lane = LaneIndex(road, *npc);
  v.switched = Switched(record, road);
  const size_t slot = static_cast<size_t>(npc_id - 1);
  if (slot < last.maneuvers.size()) v.npc_maneuver = last.maneuvers[slot];
  const bool npc_changing = IsLaneChange(v.npc_maneuver.kind) &&
                            v.npc_maneuver.status == ManeuverStatus::kRunning;

  if (v.ego_lane >= 0 && v.ego_lane == v.npc_lane && v.x > 0.0) {
    v.verdict = Verdict::kNpcFault;
    v.rule = LiabilityRule::kRearEndByNpc;
  } else if (npc_changing && !v.switched) {
    v.verdict = Verdict::kNpcFault;
    v.rule = LiabilityRule::kNpcUnsafeLaneChange;
  } else {
    v.verdict = Verdict::kEgoFault;
    v.rule = LiabilityRule::kDefaultEgo;
    v.both_changing = npc_changing && (v.switched || v.ego_lane < 0);
  }
  return v;
}

std::vector<FaultVerdict> AssessRecord(const SimulationRecord& record,
                                       const RoadModel& road) {
  std::vector<FaultVerdict> out;
  for (size_t i = 0; i < record.violations.size(); ++i) {
    if (record.violations[i].kind == ViolationKind::kCollision) {
      out.push_back(DetermineLiability(record, static_cast<int>(i), road));
    }
  }
  return out;
}

std::vector<EgoFault> EgoFaultSet(std::span<const SimulationRecord> records) {
  std::vector<EgoFault> out;
  for (size_t r = 0; r < records.size(); ++r) {
    const SimulationRecord& rec = records[r];
    for (size_t i = 0; i < rec.violations.size(); ++i) {
      const ViolationKind kind = rec.violations[i].kind;
      bool include = kind != ViolationKind::kCollision;
      if (!include) {
        for (const FaultVerdict& v : rec.liability) {
          if (v.violation == static_cast<int>(i) && v.verdict == Verdict::kEgoFault) {
            include = true;
          }
        }
      }
      if (include) out.push_back({r, static_cast<int>(i), kind});
    }
  }
  return out;
}

}  // namespace npcfuzz
