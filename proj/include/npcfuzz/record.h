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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "npcfuzz/behavior_tree.h"
#include "npcfuzz/kinematics.h"
#include "npcfuzz/nsga2.h"
#include "npcfuzz/road_model.h"
#include "npcfuzz/scenario_config.h"

namespace npcfuzz {

inline constexpr int kRecordSchema = 1;

struct ManeuverSnapshot {
  ManeuverKind kind = ManeuverKind::kKeepSpeed;
  ManeuverStatus status = ManeuverStatus::kIdle;
  friend bool operator==(const ManeuverSnapshot&, const ManeuverSnapshot&) = default;
};

/// Vehicle states at t = index * 0.1 s; vehicles[0] is the EGO, vehicles[k]
/// is NPC k - 1. `maneuvers` holds one entry per NPC.
struct Frame {
  int index = 0;
  std::vector<VehicleState> vehicles;
  std::vector<ManeuverSnapshot> maneuvers;
  double time() const { return index * kFrameDt; }
  friend bool operator==(const Frame&, const Frame&) = default;
};

enum class Outcome { kCompleted, kCollisionStopped };
enum class ViolationKind { kCollision, kIllegalLineCross, kDestinationNotReached };

std::string_view OutcomeName(Outcome outcome);
std::string_view ViolationName(ViolationKind kind);

/// The EGO-NPC contact that ended a run: the step into `frame` produced
/// overlapping boxes; `states` are those post-step states (not persisted as
/// a frame).
struct ContactInfo {
  int frame = 0;
  int npc_id = 0;
  std::vector<VehicleState> states;
  friend bool operator==(const ContactInfo&, const ContactInfo&) = default;
};

struct ViolationEvent {
  ViolationKind kind = ViolationKind::kCollision;
  int frame = 0;
  std::vector<int> participants;   // vehicle ids, EGO first
  std::vector<Point> positions;    // matching `participants`
  std::optional<ManeuverSnapshot> npc_maneuver;
  std::optional<LineKind> line;    // IllegalLineCross only
  friend bool operator==(const ViolationEvent&, const ViolationEvent&) = default;
};

enum class Verdict { kEgoFault, kNpcFault };
enum class LiabilityRule { kRearEndByNpc, kNpcUnsafeLaneChange, kDefaultEgo };

std::string_view VerdictName(Verdict v);
std::string_view RuleName(LiabilityRule r);

struct FaultVerdict {
  int violation = 0;  // index into SimulationRecord::violations
  Verdict verdict = Verdict::kEgoFault;
  LiabilityRule rule = LiabilityRule::kDefaultEgo;
  // Evidence.
  double x = 0.0;              // EGO offset along the NPC's forward axis
  int ego_lane = -1;           // -1 when straddling
  int npc_lane = -1;
  bool switched = false;
  ManeuverSnapshot npc_maneuver;
  bool both_changing = false;  // EGO and NPC mid lane change together
  friend bool operator==(const FaultVerdict&, const FaultVerdict&) = default;
};

struct SimulationRecord {
  int generation = 0;
  int index = 0;
  uint64_t seed = 0;
  RoadSpec road;
  double ell = 20.0;
  std::string ego_controller = "baseline";
  ScenarioConfig config;
  std::vector<Frame> frames;
  std::optional<ContactInfo> contact;
  std::vector<ViolationEvent> violations;
  Outcome outcome = Outcome::kCompleted;
  std::optional<FitnessVector> fitness;
  std::vector<FaultVerdict> liability;
  friend bool operator==(const SimulationRecord&, const SimulationRecord&) = default;
};

/// Compact JSON; doubles are written with round-trip precision so that
/// ParseRecord(SerializeRecord(r)) == r.
std::string SerializeRecord(const SimulationRecord& record);
/// Throws kFormat on malformed input.
SimulationRecord ParseRecord(std::string_view text);

/// Throws kIo when the file cannot be written or read.
void SaveRecord(const std::string& path, const SimulationRecord& record);
SimulationRecord LoadRecord(const std::string& path);

}  // namespace npcfuzz
