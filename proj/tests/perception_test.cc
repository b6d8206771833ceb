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

#include <numbers>
#include <set>

#include "doctest.h"
#include "npcfuzz/behavior_tree.h"
#include "npcfuzz/errors.h"
#include "npcfuzz/kinematics.h"
#include "npcfuzz/perception.h"
#include "npcfuzz/rng.h"

namespace npcfuzz {
namespace {

TEST_CASE("zone examples") {
  CHECK(ClassifyZone(10, 0, 20, 3.5) == Zone::kF1);
  CHECK(ClassifyZone(-5, -3, 20, 3.5) == Zone::kL2);
  CHECK(ClassifyZone(35, 0, 20, 3.5) == Zone::kNotDetected);
  CHECK(ClassifyZone(-12, 3, 20, 3.5) == Zone::kR1);
  CHECK(ClassifyZone(12, -3, 20, 3.5) == Zone::kL3);
}

TEST_CASE("zone tie-breaking") {
  CHECK(ClassifyZone(-5, 1.75, 20, 3.5) == Zone::kN1);  // |y| = w/2 is in the band
  CHECK(ClassifyZone(10, -3, 20, 3.5) == Zone::kL2);    // |x| = ell/2 is the middle band
  CHECK(ClassifyZone(0, 0, 20, 3.5) == Zone::kN1);
  CHECK(ClassifyZone(30, 5.25, 20, 3.5) == Zone::kR3);  // outer box edge is inside
}

TEST_CASE("detect ego uses the NPC's own axes") {
  VehicleState npc;
  npc.position = {100, 5};
  npc.heading = std::numbers::pi / 2;  // facing +d, so +s is on its left side
  VehicleState ego;
  ego.position = {103, 5};
  CHECK(DetectEgo(npc, ego, 20, 3.5) == Zone::kL2);
  ego.position = {100, 12};
  CHECK(DetectEgo(npc, ego, 20, 3.5) == Zone::kF1);
}

TEST_CASE("zone names round-trip") {
  for (Zone z : kAllZones) CHECK(ZoneFromName(ZoneName(z)) == z);
  CHECK_FALSE(ZoneFromName("Q7"));
}

TEST_CASE("default policy") {
  const BehaviorTree tree = BehaviorTree::Default();
  Rng rng(1);
  CHECK(tree.Tick(Zone::kL2, rng) == ManeuverKind::kLeftChange);
  CHECK(tree.Tick(Zone::kNotDetected, rng) == ManeuverKind::kKeepSpeed);
  CHECK(tree.Tick(Zone::kN1, rng) == ManeuverKind::kDecelerationStraight);
  std::set<ManeuverKind> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(tree.Tick(Zone::kL1, rng));
  CHECK(seen == std::set<ManeuverKind>{ManeuverKind::kKeepSpeed, ManeuverKind::kLeftChange});
}

TEST_CASE("lane changes toward a missing lane degrade to keep speed") {
  const BehaviorTree tree = BehaviorTree::Default();
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    CHECK(tree.Tick(Zone::kL2, rng, {.left = false, .right = true}) == ManeuverKind::kKeepSpeed);
    CHECK(tree.Tick(Zone::kR1, rng, {.left = true, .right = false}) == ManeuverKind::kKeepSpeed);
  }
}

TEST_CASE("tree ticks are reproducible from the seed") {
  const BehaviorTree tree = BehaviorTree::Default();
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) CHECK(tree.Tick(Zone::kR1, a) == tree.Tick(Zone::kR1, b));
}

TEST_CASE("malformed trees are rejected at construction") {
  using N = BehaviorTree::Node;
  CHECK_THROWS_AS(BehaviorTree(BehaviorTree::Sequence({})), Error);
  CHECK_THROWS_AS(BehaviorTree(BehaviorTree::Action(ManeuverKind::kKeepSpeed)), Error);
  N bad_leaf = BehaviorTree::Condition(Zone::kF1);
  bad_leaf.children.push_back(BehaviorTree::Action(ManeuverKind::kKeepSpeed));
  CHECK_THROWS_AS(BehaviorTree(BehaviorTree::Selector({bad_leaf})), Error);
  CHECK_NOTHROW(BehaviorTree(BehaviorTree::Selector(
      {BehaviorTree::Sequence({BehaviorTree::Condition(Zone::kF1),
                               BehaviorTree::Action(ManeuverKind::kKeepSpeed)})})));
}

TEST_CASE("maneuver and status names round-trip") {
  for (ManeuverKind k : kAllManeuvers) CHECK(ManeuverFromName(ManeuverName(k)) == k);
  CHECK(StatusFromName("RUNNING") == ManeuverStatus::kRunning);
  CHECK(StatusFromName("IDLE") == ManeuverStatus::kIdle);
}

}  // namespace
}  // namespace npcfuzz
