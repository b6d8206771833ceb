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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "npcfuzz/adversarial_npc.h"
#include "npcfuzz/ego_controller.h"
#include "npcfuzz/errors.h"
#include "npcfuzz/road_model.h"

namespace npcfuzz {
namespace {

VehicleState Ego(Point p, double v) {
  VehicleState e;
  e.id = 0;
  e.kind = VehicleKind::kEgo;
  e.position = p;
  e.speed = v;
  e.length = kEgoDims.length;
  e.width = kEgoDims.width;
  return e;
}

VehicleState Npc(int id, Point p, double v) {
  VehicleState n;
  n.id = id;
  n.position = p;
  n.speed = v;
  return n;
}

// IDM written out from its textbook form.
double IdmOracle(double v, double gap, double dv) {
  const double s0 = 2, T = 1.5, a = 2, b = 3, v0 = 14;
  const double s_star = s0 + v * T + v * dv / (2 * std::sqrt(a * b));
  return a * (1 - std::pow(v / v0, 4) - std::pow(s_star / gap, 2));
}

TEST_CASE("IDM acceleration") {
  const EgoParams p;
  CHECK(IdmAcceleration(p, 14, INFINITY, 0) == doctest::Approx(0.0));
  CHECK(IdmAcceleration(p, 0, INFINITY, 0) == doctest::Approx(2.0));
  CHECK(IdmAcceleration(p, 10, 10, 0) == doctest::Approx(IdmOracle(10, 10, 10)));
  CHECK(IdmAcceleration(p, 8, 30, 6) == doctest::Approx(IdmOracle(8, 30, 2)));
}

TEST_CASE("free flow holds the desired speed on the own centerline") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  const BaselineEgo ego;
  const DriveCommand c = ego.Decide(Ego({100, 1.75}, 14), {}, {380, 1.75}, road);
  CHECK(c.speed == doctest::Approx(14.0));
  CHECK(c.target.d == 1.75);
  CHECK(c.target.s > 100);
}

TEST_CASE("a stopped leader forces braking") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  const BaselineEgo ego;
  const std::vector<VehicleState> npcs = {Npc(1, {110, 1.75}, 0)};
  const DriveCommand c = ego.Decide(Ego({100, 1.75}, 10), npcs, {380, 1.75}, road);
  CHECK(c.speed < 10.0 - 0.5);
}

TEST_CASE("a blocked lane with clear gaps triggers a lane change") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  const BaselineEgo ego;
  // Slow leader 8 m ahead in lane 1; lane 0 has a 20 m front and 12 m rear
  // bumper gap.
  const double front = 100 + 2.35 + 20 + 2.25;
  const double rear = 100 - 2.35 - 12 - 2.25;
  const std::vector<VehicleState> npcs = {Npc(1, {100 + 2.35 + 8 + 2.25, 5.25}, 2),
                                          Npc(2, {front, 1.75}, 10), Npc(3, {rear, 1.75}, 10)};
  const DriveCommand c = ego.Decide(Ego({100, 5.25}, 10), npcs, {380, 5.25}, road);
  CHECK(c.target.d == 1.75);

  // The lane keeper stays put.
  const LaneKeeperEgo keeper;
  CHECK(keeper.Decide(Ego({100, 5.25}, 10), npcs, {380, 5.25}, road).target.d == 5.25);

  // A rear gap under 10 m vetoes the change.
  std::vector<VehicleState> tight = npcs;
  tight[2].position.s = 100 - 2.35 - 8 - 2.25;
  CHECK(ego.Decide(Ego({100, 5.25}, 10), tight, {380, 5.25}, road).target.d == 5.25);
}

TEST_CASE("controller registry") {
  CHECK(MakeEgoController("baseline")->name() == "baseline");
  CHECK(MakeEgoController("lane-keeper")->name() == "lane-keeper");
  CHECK_THROWS_AS(MakeEgoController("apollo"), Error);
  CHECK(EgoControllerNames().size() == 2);
}

TEST_CASE("NPC cruises without a plan before monitoring starts") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  AdversarialNpc npc(Npc(1, {100, 1.75}, 8), 7);
  npc.Decide(Ego({40, 1.75}, 10), road, BehaviorTree::Default(), 20, false);
  CHECK(npc.maneuver().status == ManeuverStatus::kIdle);
  CHECK_FALSE(npc.maneuver().plan);
  CHECK(npc.last_zone() == Zone::kNotDetected);
  CHECK(npc.Control(road).speed == doctest::Approx(8.0));
}

TEST_CASE("EGO behind the NPC makes it decelerate") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  AdversarialNpc npc(Npc(1, {100, 1.75}, 8), 7);
  npc.Decide(Ego({90, 1.75}, 10), road, BehaviorTree::Default(), 20, true);
  CHECK(npc.last_zone() == Zone::kN1);
  CHECK(npc.maneuver().kind == ManeuverKind::kDecelerationStraight);
  CHECK(npc.maneuver().status == ManeuverStatus::kRunning);
  CHECK(npc.maneuver().plan);
  CHECK(npc.Control(road).speed < 8.0);
}

TEST_CASE("a lane change off the road degrades to keep speed") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  AdversarialNpc npc(Npc(1, {100, 1.75}, 8), 7);
  // EGO on the NPC's left (zone L2) although lane 0 has no left neighbour.
  npc.Decide(Ego({97, -1.5}, 8), road, BehaviorTree::Default(), 20, true);
  CHECK(npc.last_zone() == Zone::kL2);
  CHECK(npc.maneuver().kind == ManeuverKind::kKeepSpeed);
  CHECK(npc.maneuver().status == ManeuverStatus::kRunning);
}

TEST_CASE("an NPC lane change runs to completion") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  AdversarialNpc npc(Npc(1, {100, 5.25}, 8), 21);
  const VehicleState ego = Ego({97, 1.75}, 8);  // L2 of the NPC
  npc.Decide(ego, road, BehaviorTree::Default(), 20, true);
  REQUIRE(npc.maneuver().kind == ManeuverKind::kLeftChange);
  int steps = 0;
  while (npc.maneuver().status == ManeuverStatus::kRunning && steps < 400) {
    const DriveCommand c = npc.Control(road);
    npc.Advance(StepVehicle(npc.state(), c.target, c.speed, kFrameDt));
    ++steps;
  }
  CHECK(npc.maneuver().status == ManeuverStatus::kIdle);
  CHECK_FALSE(npc.maneuver().plan);
  CHECK(npc.state().position.d == doctest::Approx(1.75).epsilon(0.1));
}

TEST_CASE("a wrecked NPC stops and stays put") {
  const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  AdversarialNpc npc(Npc(1, {100, 1.75}, 8), 7);
  npc.Wreck();
  CHECK(npc.wrecked());
  CHECK(npc.state().speed == 0.0);
  npc.Decide(Ego({90, 1.75}, 10), road, BehaviorTree::Default(), 20, true);
  CHECK(npc.Control(road).speed == 0.0);
}

}  // namespace
}  // namespace npcfuzz
