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

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "npcfuzz/errors.h"
#include "npcfuzz/kinematics.h"
#include "npcfuzz/nsga2.h"
#include "npcfuzz/rng.h"
#include "npcfuzz/scenario_config.h"
#include "npcfuzz/scenario_search.h"

namespace npcfuzz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Every gene as a comparable string, in a fixed order.
std::vector<std::string> Genes(const ScenarioConfig& c) {
  auto pt = [](Point p) { return std::to_string(p.s) + "," + std::to_string(p.d); };
  std::vector<std::string> g = {pt(c.ego.start), pt(c.ego.destination)};
  for (const Point& n : c.npcs) g.push_back(pt(n));
  for (double w : {c.weather.rain, c.weather.fog, c.weather.wetness, c.weather.cloudness}) {
    g.push_back(std::to_string(w));
  }
  g.push_back(std::to_string(c.weather.time));
  return g;
}

int DiffCount(const ScenarioConfig& a, const ScenarioConfig& b) {
  const auto ga = Genes(a), gb = Genes(b);
  int n = 0;
  for (size_t i = 0; i < ga.size(); ++i) n += ga[i] != gb[i];
  return n;
}

TEST_CASE("random configs satisfy the placement invariants") {
  for (const char* name : {"urban2", "highway4"}) {
    const RoadModel road = BuildRoad(*RoadPreset(name));
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
      const ScenarioConfig c = RandomConfig(road, rng);
      CHECK(c.npcs.size() == static_cast<size_t>(road.lane_count()));
      CHECK_NOTHROW(ValidateConfig(c, road));
      for (const Point& n : c.npcs) {
        CHECK(n.s >= 50.0);
        CHECK(n.s <= 350.0);
      }
      // Axis-aligned start boxes: overlap iff both projections overlap.
      for (size_t a = 0; a < c.npcs.size(); ++a) {
        for (size_t b = a + 1; b < c.npcs.size(); ++b) {
          const bool overlap = std::abs(c.npcs[a].s - c.npcs[b].s) <= kNpcDims.length &&
                               std::abs(c.npcs[a].d - c.npcs[b].d) <= kNpcDims.width;
          CHECK_FALSE(overlap);
        }
      }
    }
  }
}

TEST_CASE("random configs are reproducible") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  Rng a(5), b(5);
  CHECK(RandomConfig(road, a) == RandomConfig(road, b));
}

TEST_CASE("config validation") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  Rng rng(2);
  ScenarioConfig c = RandomConfig(road, rng);
  ScenarioConfig bad = c;
  bad.ego.destination.s = 200;
  CHECK_THROWS_AS(ValidateConfig(bad, road), Error);
  bad = c;
  bad.npcs[1] = bad.npcs[0];
  CHECK_FALSE(IsValidConfig(bad, road));
  bad = c;
  bad.weather.rain = 1.5;
  CHECK_FALSE(IsValidConfig(bad, road));
  bad = c;
  bad.npcs.clear();
  CHECK_FALSE(IsValidConfig(bad, road));
  CHECK_NOTHROW(ValidateConfig(bad, road, true));
}

TEST_CASE("mutation changes exactly one gene") {
  const RoadModel road = BuildRoad(*RoadPreset("highway4"));
  Rng rng(8);
  ScenarioConfig c = RandomConfig(road, rng);
  std::set<int> moved_index;
  for (int i = 0; i < 300; ++i) {
    const ScenarioConfig m = Mutate(c, road, rng);
    CHECK(DiffCount(c, m) == 1);
    CHECK(IsValidConfig(m, road));
    if (m.weather.rain != c.weather.rain) {
      CHECK(m.weather.rain >= 0.0);
      CHECK(m.weather.rain <= 1.0);
    }
    if (!(m.ego.destination == c.ego.destination)) CHECK(m.ego.destination.s > road.bubble_end());
    const auto ga = Genes(c), gb = Genes(m);
    for (size_t g = 0; g < ga.size(); ++g) {
      if (ga[g] != gb[g]) moved_index.insert(static_cast<int>(g));
    }
    c = m;
  }
  CHECK(moved_index.size() == Genes(c).size());  // every gene gets hit eventually
}

TEST_CASE("crossover exchanges a suffix within one chromosome") {
  const RoadModel road = BuildRoad(*RoadPreset("highway4"));
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const ScenarioConfig a = RandomConfig(road, rng);
    const ScenarioConfig b = RandomConfig(road, rng);
    const auto [c1, c2] = Crossover(a, b, road, rng);
    CHECK(IsValidConfig(c1, road));
    CHECK(IsValidConfig(c2, road));
    // Per position, the children carry the parents' genes between them.
    const auto ga = Genes(a), gb = Genes(b), g1 = Genes(c1), g2 = Genes(c2);
    for (size_t g = 0; g < ga.size(); ++g) {
      const bool kept = g1[g] == ga[g] && g2[g] == gb[g];
      const bool swapped = g1[g] == gb[g] && g2[g] == ga[g];
      CHECK((kept || swapped));
    }
    // NPC lists are prefix-of-one plus suffix-of-the-other.
    bool spliced = false;
    for (size_t k = 0; k <= a.npcs.size() && !spliced; ++k) {
      std::vector<Point> want(a.npcs.begin(), a.npcs.begin() + k);
      want.insert(want.end(), b.npcs.begin() + k, b.npcs.end());
      spliced = c1.npcs == want;
    }
    CHECK(spliced);
  }
  const ScenarioConfig same = RandomConfig(road, rng);
  const auto [s1, s2] = Crossover(same, same, road, rng);
  CHECK(s1 == same);
  CHECK(s2 == same);
}

TEST_CASE("fingerprints quantize positions") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  Rng rng(3);
  ScenarioConfig c = RandomConfig(road, rng);
  c.npcs[0].s = 120.3;
  ScenarioConfig near = c;
  near.npcs[0].s = 120.31;
  CHECK(Fingerprint(c) == Fingerprint(near));
  near.npcs[0].s = 123.3;
  CHECK(Fingerprint(c) != Fingerprint(near));
}

TEST_CASE("dominance and ranking examples") {
  CHECK(Dominates({2, 2, 2}, {1, 1, 1}));
  CHECK_FALSE(Dominates({1, 1, 1}, {1, 1, 1}));
  const std::vector<Objectives> total = {{1, 1, 1}, {2, 2, 2}};
  CHECK(NonDominatedSort(total) == std::vector<int>{1, 0});
  const std::vector<Objectives> incomparable = {{1, 2, 1}, {2, 1, 1}};
  CHECK(NonDominatedSort(incomparable) == std::vector<int>{0, 0});
}

TEST_CASE("crowding distance examples") {
  const std::vector<Objectives> two = {{0, 0, 0}, {1, 1, 1}};
  CHECK(CrowdingDistance(two) == std::vector<double>{kInf, kInf});
  // Collinear and equally spaced: the middle gets (2/2) per objective.
  const std::vector<Objectives> line = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}};
  const auto cd = CrowdingDistance(line);
  CHECK(cd[0] == kInf);
  CHECK(cd[2] == kInf);
  CHECK(cd[1] == doctest::Approx(3.0));
  // A flat objective adds nothing.
  const std::vector<Objectives> flat = {{0, 5, 0}, {1, 5, 1}, {2, 5, 2}};
  CHECK(CrowdingDistance(flat)[1] == doctest::Approx(2.0));
}

TEST_CASE("selection examples") {
  // One front. Crowding: index 1 gets 0.375 + 0.375, index 2 gets
  // 0.75 + 0.75, so index 1 is the one dropped.
  const std::vector<Objectives> front = {{0, 4, 0}, {1, 3, 0}, {1.5, 2.5, 0}, {4, 0, 0}};
  const Selection s = SelectNextGeneration(front, 3);
  CHECK(s.crowding[1] == doctest::Approx(0.75));
  CHECK(s.crowding[2] == doctest::Approx(1.5));
  CHECK(std::set<size_t>(s.indices.begin(), s.indices.end()) == std::set<size_t>{0, 2, 3});
  // Fully ordered ranks: the best tau regardless of crowding.
  const std::vector<Objectives> chain = {{1, 1, 1}, {4, 4, 4}, {2, 2, 2}, {3, 3, 3}};
  CHECK(SelectNextGeneration(chain, 2).indices == std::vector<size_t>{1, 3});
}

TEST_CASE("restart rule") {
  const std::vector<Objectives> flat(6, Objectives{1, 1, 1});
  CHECK(CheckRestart(flat, 5));
  std::vector<Objectives> late = flat;
  late[4] = {1, 2, 1};  // improvement at the 4th of five
  CHECK_FALSE(CheckRestart(late, 5));
  CHECK_FALSE(CheckRestart(std::vector<Objectives>(5, Objectives{1, 1, 1}), 5));

  StagnationMonitor m(5);
  for (int g = 0; g < 5; ++g) CHECK_FALSE(m.Update({1, 1, 1}));
  CHECK(m.Update({1, 1, 1}));
  CHECK(m.stagnant() == 0);
  CHECK(m.archive() == Objectives{1, 1, 1});
}

TEST_CASE("search batches and bookkeeping") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  ScenarioSearch a(road, 99), b(road, 99);
  const auto first = a.Propose();
  CHECK(first.size() == 20);
  CHECK(first == b.Propose());
  CHECK(a.seen().size() == 20);
  Rng rng(1);
  std::vector<FitnessVector> fit;
  for (size_t i = 0; i < first.size(); ++i) {
    fit.push_back({rng.Uniform(0, 100), rng.Uniform(0, 10), rng.Uniform(0, 10)});
  }
  CHECK_FALSE(a.Report(fit));
  CHECK(a.generation() == 1);
  CHECK(a.population().size() == 20);
  const auto offspring = a.Propose();
  CHECK(offspring.size() == 20);
  CHECK(a.seen().size() == 40);
  // A prefix report is accepted when the budget cuts a batch short.
  CHECK_NOTHROW(a.Report({fit.begin(), fit.begin() + 5}));
  CHECK(a.history().size() == 2);
}

}  // namespace
}  // namespace npcfuzz
