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
#include <string>
#include <unordered_set>
#include <vector>

#include "npcfuzz/nsga2.h"
#include "npcfuzz/rng.h"
#include "npcfuzz/road_model.h"
#include "npcfuzz/scenario_config.h"

namespace npcfuzz {

struct SearchParams {
  size_t tau = 20;
  size_t offspring = 20;  // half by mutation, half by crossover
  int stagnation = 5;     // generations without improvement before a restart
  int max_frames = 500;
};

struct Individual {
  ScenarioConfig config;
  FitnessVector fitness;
  int rank = 0;
  double crowding = 0.0;
};

/// Generational NSGA-II over scenario configs, driven one batch at a time:
/// Propose() hands out configs, Report() takes their fitness back in the
/// same order. Fingerprints of every proposed config are remembered across
/// restarts and never proposed again.
class ScenarioSearch {
 public:
  ScenarioSearch(const RoadModel& road, uint64_t seed, SearchParams params = {});

  /// Random configs for the first generation and after a restart; otherwise
  /// offspring of the current population. Throws kGeneration when no unseen
  /// config can be produced.
  std::vector<ScenarioConfig> Propose();

  /// Fitness for the last proposal (a prefix is allowed when the budget cuts
  /// a batch short). Returns true when this generation triggered a restart.
  bool Report(const std::vector<FitnessVector>& fitness);

  int generation() const { return generation_; }
  int restarts() const { return restarts_; }
  const std::vector<Individual>& population() const { return population_; }
  const std::unordered_set<std::string>& seen() const { return seen_; }
  /// Per-generation best of each objective, in report order.
  const std::vector<Objectives>& history() const { return history_; }

 private:
  bool Remember(const ScenarioConfig& config);
  size_t Tournament();
  ScenarioConfig FreshConfig();

  RoadModel road_;
  Rng rng_;
  SearchParams params_;
  std::vector<Individual> population_;
  std::vector<ScenarioConfig> pending_;
  bool pending_fresh_ = true;
  bool restart_next_ = true;
  int generation_ = 0;
  int restarts_ = 0;
  StagnationMonitor monitor_;
  std::unordered_set<std::string> seen_;
  std::vector<Objectives> history_;
};

}  // namespace npcfuzz
