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

#include "npcfuzz/nsga2.h"
#include "npcfuzz/record.h"
#include "npcfuzz/road_model.h"

namespace npcfuzz {

struct FitnessParams {
  double w1 = 1.0;
  double w2 = 1.0;
  double epsilon = 0.1;  // m, clamp for D_c and D_l
};

/// Closest EGO-NPC box distance over all frames; 0 after a contact and
/// +inf without NPCs.
double MinNpcDistance(const SimulationRecord& record);
/// Closest EGO approach to any illegal line over all frames.
double MinLineDistance(const SimulationRecord& record, const RoadModel& road);

/// f1 = distance from the final EGO position to the destination,
/// f2 = w1 / max(D_c, eps), f3 = w2 / max(D_l, eps). Throws kEvaluation on a
/// record without frames.
FitnessVector EvaluateFitness(const SimulationRecord& record, const RoadModel& road,
                              const FitnessParams& params = {});

}  // namespace npcfuzz
