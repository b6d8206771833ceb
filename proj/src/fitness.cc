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

#include "npcfuzz/fitness.h"

#include <algorithm>
#include <limits>

#include "npcfuzz/errors.h"

namespace npcfuzz {

double MinNpcDistance(const SimulationRecord& record) {
  if (record.contact) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const Frame& f : record.frames) {
    const OrientedBox ego = f.vehicles.front().Box();
    for (size_t k = 1; k < f.vehicles.size(); ++k) {
      best = std::min(best, BoxDistance(ego, f.vehicles[k].Box()));
    }
  }
  return best;
}

double MinLineDistance(const SimulationRecord& record, const RoadModel& road) {
  double best = std::numeric_limits<double>::infinity();
  for (const Frame& f : record.frames) {
    best = std::min(best, DistanceToIllegalLines(road, f.vehicles.front().Box()));
  }
  return best;
}

FitnessVector EvaluateFitness(const SimulationRecord& record, const RoadModel& road,
                              const FitnessParams& params) {
  if (record.frames.empty() || record.frames.front().vehicles.empty()) {
    throw Error(ErrorCode::kEvaluation, "record has no frames");
  }
  const Point final_pos = record.frames.back().vehicles.front().position;
  FitnessVector f;
  f.f1 = Distance(final_pos, record.config.ego.destination);
  f.f2 = params.w1 / std::max(MinNpcDistance(record), params.epsilon);
  f.f3 = params.w2 / std::max(MinLineDistance(record, road), params.epsilon);
  return f;
}

}  // namespace npcfuzz
