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

#include "npcfuzz/scenario_search.h"

#include <algorithm>

#include "npcfuzz/errors.h"

namespace npcfuzz {

namespace {
constexpr int kMaxDraws = 1000;
constexpr uint64_t kSearchStream = 0x5ea4c4;
}  // namespace

ScenarioSearch::ScenarioSearch(const RoadModel& road, uint64_t seed, SearchParams params)
    : road_(road),
      rng_(MixSeed(seed, kSearchStream)),
      params_(params),
      monitor_(params.stagnation) {}

bool ScenarioSearch::Remember(const ScenarioConfig& config) {
  return seen_.insert(Fingerprint(config)).second;
}

ScenarioConfig ScenarioSearch::FreshConfig() {
  for (int i = 0; i < kMaxDraws; ++i) {
    ScenarioConfig c = RandomConfig(road_, rng_, params_.max_frames);
    if (Remember(c)) return c;
  }
  throw Error(ErrorCode::kGeneration, "no unseen random config");
}

size_t ScenarioSearch::Tournament() {
  const int n = static_cast<int>(population_.size());
  const size_t a = static_cast<size_t>(rng_.UniformInt(0, n - 1));
  const size_t b = static_cast<size_t>(rng_.UniformInt(0, n - 1));
  const Individual& ia = population_[a];
  const Individual& ib = population_[b];
  if (ia.rank != ib.rank) return ia.rank < ib.rank ? a : b;
  if (ia.crowding != ib.crowding) return ia.crowding > ib.crowding ? a : b;
  return std::min(a, b);
}

std::vector<ScenarioConfig> ScenarioSearch::Propose() {
  pending_.clear();
  pending_fresh_ = restart_next_ || population_.empty();
  if (pending_fresh_) {
    for (size_t i = 0; i < params_.tau; ++i) pending_.push_back(FreshConfig());
    return pending_;
  }

  const size_t crossovers = params_.offspring / 2;
  const size_t mutations = params_.offspring - crossovers;
  for (size_t i = 0; i < mutations; ++i) {
    bool done = false;
    for (int attempt = 0; attempt < kMaxDraws && !done; ++attempt) {
      try {
        ScenarioConfig child = Mutate(population_[Tournament()].config, road_, rng_);
        if (Remember(child)) {
          pending_.push_back(std::move(child));
          done = true;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kMutation) throw;
      }
    }
    if (!done) pending_.push_back(FreshConfig());
  }
  while (pending_.size() < params_.offspring) {
    bool done = false;
    for (int attempt = 0; attempt < kMaxDraws && !done; ++attempt) {
      try {
        const ScenarioConfig& a = population_[Tournament()].config;
        const ScenarioConfig& b = population_[Tournament()].config;
        auto [ca, cb] = Crossover(a, b, road_, rng_);
        const std::string fa = Fingerprint(ca);
        const std::string fb = Fingerprint(cb);
        if (seen_.count(fa) || seen_.count(fb) || fa == fb) continue;
        seen_.insert(fa);
        seen_.insert(fb);
        pending_.push_back(std::move(ca));
        if (pending_.size() < params_.offspring) pending_.push_back(std::move(cb));
        done = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kCrossover) throw;
      }
    }
    if (!done) pending_.push_back(FreshConfig());
  }
  return pending_;
}

bool ScenarioSearch::Report(const std::vector<FitnessVector>& fitness) {
  if (fitness.size() > pending_.size()) {
    throw Error(ErrorCode::kPrecondition, "more fitness values than proposed configs");
  }
  std::vector<Individual> pool;
  if (!pending_fresh_) pool = population_;
  std::vector<Objectives> batch;
  for (size_t i = 0; i < fitness.size(); ++i) {
    pool.push_back({pending_[i], fitness[i], 0, 0.0});
    batch.push_back(fitness[i].values());
  }
  pending_.clear();
  if (batch.empty()) return false;

  std::vector<Objectives> values;
  for (const Individual& ind : pool) values.push_back(ind.fitness.values());
  const Selection sel = SelectNextGeneration(values, params_.tau);
  population_.clear();
  for (size_t i : sel.indices) {
    Individual ind = pool[i];
    ind.rank = sel.rank[i];
    ind.crowding = sel.crowding[i];
    population_.push_back(std::move(ind));
  }

  const Objectives best = BestPerObjective(batch);
  history_.push_back(best);
  const bool restart = monitor_.Update(best);
  restart_next_ = restart;
  if (restart) ++restarts_;
  ++generation_;
  return restart;
}

}  // namespace npcfuzz
