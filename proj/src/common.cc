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

#include <limits>

#include "npcfuzz/errors.h"
#include "npcfuzz/rng.h"

namespace npcfuzz {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidGeometry: return "invalid-geometry";
    case ErrorCode::kOutOfRoad: return "out-of-road";
    case ErrorCode::kNumeric: return "numeric";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kStructure: return "structure";
    case ErrorCode::kPlanningFailure: return "planning-failure";
    case ErrorCode::kGeneration: return "generation";
    case ErrorCode::kMutation: return "mutation";
    case ErrorCode::kCrossover: return "crossover";
    case ErrorCode::kEvaluation: return "evaluation";
    case ErrorCode::kSetup: return "setup";
    case ErrorCode::kNotApplicable: return "not-applicable";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUsage: return "usage";
    case ErrorCode::kFormat: return "format";
  }
  return "unknown";
}

int Rng::UniformInt(int lo, int hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % span;
  uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return lo + static_cast<int>(draw % span);
}

uint64_t MixSeed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace npcfuzz
