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

#include <string>
#include <utility>
#include <vector>

#include "npcfuzz/geometry.h"
#include "npcfuzz/rng.h"
#include "npcfuzz/road_model.h"

namespace npcfuzz {

/// Weather genes. Carried through the search and persisted, but they have
/// no effect on the simulated dynamics.
struct Weather {
  double rain = 0.0;
  double fog = 0.0;
  double wetness = 0.0;
  double cloudness = 0.0;
  int time = 12;  // hour of day, [0, 24]
  friend bool operator==(const Weather&, const Weather&) = default;
};

struct EgoGenes {
  Point start;
  Point destination;
  friend bool operator==(const EgoGenes&, const EgoGenes&) = default;
};

/// One individual: EGO start/destination, NPC starts, weather, frame budget.
struct ScenarioConfig {
  EgoGenes ego;
  std::vector<Point> npcs;
  Weather weather;
  int max_frames = 500;
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

enum class Chromosome { kEgo, kNpcs, kWeather };
inline constexpr int kWeatherGenes = 5;  // rain, fog, wetness, cloudness, time
inline constexpr int kEgoGenes = 2;      // start, destination

/// Throws kSetup naming the first violated invariant: EGO box before the
/// bubble, NPC centres inside it, destination beyond it, every initial box
/// on the road and pairwise disjoint, weather in range, positive frames.
/// `allow_empty_npcs` admits scenarios without NPCs (test hook).
void ValidateConfig(const ScenarioConfig& config, const RoadModel& road,
                    bool allow_empty_npcs = false);
bool IsValidConfig(const ScenarioConfig& config, const RoadModel& road);

/// Quantized identity: positions to 1 m, weather floats to 0.05, time exact.
std::string Fingerprint(const ScenarioConfig& config);

/// Fresh individual with lane_count NPCs on lane centerlines. Throws
/// kGeneration after 100 failed placements.
ScenarioConfig RandomConfig(const RoadModel& road, Rng& rng, int max_frames = 500);

/// Resamples exactly one gene of one uniformly chosen chromosome. Throws
/// kMutation when no valid differing value is found in 100 draws.
ScenarioConfig Mutate(const ScenarioConfig& config, const RoadModel& road, Rng& rng);

/// Single-point crossover inside one uniformly chosen chromosome: genes from
/// the cut onward are exchanged. An invalid pair is repaired by trying the
/// remaining cuts, then the other chromosomes; throws kCrossover when none
/// yields two valid children.
std::pair<ScenarioConfig, ScenarioConfig> Crossover(const ScenarioConfig& a,
                                                    const ScenarioConfig& b,
                                                    const RoadModel& road, Rng& rng);

}  // namespace npcfuzz
