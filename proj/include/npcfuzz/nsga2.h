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

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace npcfuzz {

/// Three objectives, all maximized.
using Objectives = std::array<double, 3>;

/// f1: final EGO distance to the destination. f2 = w1 / max(D_c, eps) with
/// D_c the closest EGO-NPC box distance. f3 = w2 / max(D_l, eps) with D_l
/// the closest EGO approach to an illegal line.
struct FitnessVector {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  Objectives values() const { return {f1, f2, f3}; }
  friend bool operator==(const FitnessVector&, const FitnessVector&) = default;
};

/// a >= b in every objective and > in at least one.
bool Dominates(const Objectives& a, const Objectives& b);

/// Pareto rank per individual; 0 is the non-dominated front.
std::vector<int> NonDominatedSort(std::span<const Objectives> pop);

/// Crowding distance within one front. Extremes of each objective get +inf
/// (ties broken by index), an objective with zero range adds nothing, and
/// fronts of two or fewer are all +inf.
std::vector<double> CrowdingDistance(std::span<const Objectives> front);

struct Selection {
  std::vector<size_t> indices;  // chosen, best first
  std::vector<int> rank;        // per input individual
  std::vector<double> crowding;  // per input individual, within its front
};

/// Keeps the best `tau` by ascending rank, then descending crowding, then
/// ascending index.
Selection SelectNextGeneration(std::span<const Objectives> pop, size_t tau);

/// Per-objective best-so-far archive. An update counts as an improvement
/// when any objective exceeds the archived best.
class StagnationMonitor {
 public:
  explicit StagnationMonitor(int limit = 5) : limit_(limit) {}
  /// Feeds one generation's per-objective best. Returns true when this
  /// generation completes `limit` consecutive non-improving generations; the
  /// counter then resets while the archive is kept.
  bool Update(const Objectives& generation_best);
  int stagnant() const { return stagnant_; }
  const std::optional<Objectives>& archive() const { return archive_; }

 private:
  int limit_;
  int stagnant_ = 0;
  std::optional<Objectives> archive_;
};

/// Pure form of the restart rule over a history of per-generation bests: the
/// first entry seeds the archive; true when the trailing run of
/// non-improving generations is at least `limit` long.
bool CheckRestart(std::span<const Objectives> history, int limit = 5);

/// Component-wise maximum over a set of vectors.
Objectives BestPerObjective(std::span<const Objectives> pop);

}  // namespace npcfuzz
