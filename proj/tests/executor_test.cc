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
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "npcfuzz/ego_controller.h"
#include "npcfuzz/errors.h"
#include "npcfuzz/executor.h"
#include "npcfuzz/fitness.h"
#include "npcfuzz/liability.h"
#include "npcfuzz/record.h"
#include "npcfuzz/rng.h"

namespace npcfuzz {
namespace {

const RoadModel& Urban() {
  static const RoadModel road = BuildRoad(*RoadPreset("urban2"));
  return road;
}

VehicleState State(int id, Point p, double heading = 0.0, double v = 0.0) {
  VehicleState s;
  s.id = id;
  s.kind = id == 0 ? VehicleKind::kEgo : VehicleKind::kNpc;
  s.position = p;
  s.heading = heading;
  s.speed = v;
  const BoxDims dims = id == 0 ? kEgoDims : kNpcDims;
  s.length = dims.length;
  s.width = dims.width;
  return s;
}

// A record whose EGO follows `ego_d` (one lateral offset per frame) at
// s = 100 + frame; one NPC sits at `npc`.
SimulationRecord Trace(const std::vector<double>& ego_d, VehicleState npc,
                       ManeuverSnapshot m = {}) {
  SimulationRecord r;
  r.road = Urban().spec();
  r.config.ego.destination = {380, 1.75};
  for (size_t k = 0; k < ego_d.size(); ++k) {
    Frame f;
    f.index = static_cast<int>(k);
    f.vehicles = {State(0, {100.0 + k, ego_d[k]}), npc};
    f.maneuvers = {m};
    r.frames.push_back(f);
  }
  return r;
}

SimulationRecord WithCollision(SimulationRecord r) {
  ContactInfo c;
  c.frame = static_cast<int>(r.frames.size());
  c.npc_id = 1;
  c.states = r.frames.back().vehicles;
  r.contact = c;
  r.outcome = Outcome::kCollisionStopped;
  r.violations = DetectViolations(r, Urban());
  return r;
}

ScenarioConfig OneNpc(Point ego, Point npc) {
  ScenarioConfig c;
  c.ego = {ego, {380, ego.d}};
  c.npcs = {npc};
  return c;
}

TEST_CASE("without NPCs the EGO drives to its destination") {
  ScenarioConfig c;
  c.ego = {{20, 1.75}, {380, 1.75}};
  ExecutorOptions opt;
  opt.allow_empty_npcs = true;
  const SimulationRecord r = ExecuteScenario(Urban(), c, BaselineEgo(), 20, 1, opt);
  CHECK(r.outcome == Outcome::kCompleted);
  CHECK(r.frames.size() == 500);
  CHECK(r.violations.empty());
  CHECK(Distance(r.frames.back().vehicles[0].position, c.ego.destination) < 2.35);
}

TEST_CASE("a scripted stop too close ahead ends in a truncated collision") {
  // EGO at 14 m/s needs 14^2 / (2 * 8) = 12.25 m to stop at full braking;
  // the stationary NPC is 55 - 2.25 - (45 + 2.35) = 5.4 m ahead.
  ExecutorOptions opt;
  opt.ego_initial_speed = 14;
  opt.npc.initial_speed = 0;
  opt.npc_script = [](int, const VehicleState& n, int) -> std::optional<DriveCommand> {
    return DriveCommand{{n.position.s + 10, n.position.d}, 0.0};
  };
  const SimulationRecord r =
      ExecuteScenario(Urban(), OneNpc({45, 1.75}, {55, 1.75}), BaselineEgo(), 20, 3, opt);
  REQUIRE(r.contact);
  CHECK(r.outcome == Outcome::kCollisionStopped);
  // 5.4 m at no more than 14 m/s takes at least four steps; braking at
  // 8 m/s^2 still covers it within six.
  CHECK(r.contact->frame >= 4);
  CHECK(r.contact->frame <= 6);
  CHECK(r.frames.back().index == r.contact->frame - 1);
  CHECK_FALSE(BoxesCollide(r.frames.back().vehicles[0].Box(), r.frames.back().vehicles[1].Box()));
  CHECK(BoxesCollide(r.contact->states[0].Box(), r.contact->states[1].Box()));
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].kind == ViolationKind::kCollision);
  CHECK(r.violations[0].participants == std::vector<int>{0, 1});
}

TEST_CASE("execution is deterministic") {
  Rng rng(4);
  const ScenarioConfig c = RandomConfig(Urban(), rng);
  const BaselineEgo ego;
  const SimulationRecord a = ExecuteScenario(Urban(), c, ego, 20, 77);
  const SimulationRecord b = ExecuteScenario(Urban(), c, ego, 20, 77);
  CHECK(SerializeRecord(a) == SerializeRecord(b));
}

TEST_CASE("the frame budget caps the record") {
  Rng rng(4);
  ScenarioConfig c = RandomConfig(Urban(), rng);
  c.max_frames = 30;
  const SimulationRecord r = ExecuteScenario(Urban(), c, BaselineEgo(), 20, 1);
  CHECK(r.frames.size() <= 30);
  CHECK(r.frames.front().index == 0);
}

TEST_CASE("invalid configs are a setup error") {
  ScenarioConfig c = OneNpc({45, 1.75}, {46, 1.75});
  try {
    ExecuteScenario(Urban(), c, BaselineEgo(), 20, 1);
    FAIL("expected a setup error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSetup);
  }
}

TEST_CASE("NPCs that collide with each other are stopped in place") {
  // NPC 1 is scripted to run into the stationary NPC 2 in lane 1.
  ExecutorOptions opt;
  opt.npc.initial_speed = 0;
  opt.npc_script = [](int k, const VehicleState& n, int) -> std::optional<DriveCommand> {
    if (k == 0) return DriveCommand{{n.position.s + 10, n.position.d}, 10.0};
    return DriveCommand{{n.position.s + 10, n.position.d}, 0.0};
  };
  ScenarioConfig c;
  c.ego = {{10, 1.75}, {380, 1.75}};
  c.npcs = {{60, 5.25}, {75, 5.25}};
  c.max_frames = 80;
  const SimulationRecord r = ExecuteScenario(Urban(), c, LaneKeeperEgo(), 20, 1, opt);
  const Frame& last = r.frames.back();
  CHECK(last.vehicles[1].speed == 0.0);
  CHECK(last.vehicles[1].position.s < 75.0);
}

TEST_CASE("destination threshold is half the EGO length") {
  SimulationRecord r = Trace({1.75}, State(1, {200, 5.25}));
  r.config.ego.destination = {100.5, 1.75};
  CHECK(DetectViolations(r, Urban()).empty());
  r.config.ego.destination = {103, 1.75};
  const auto v = DetectViolations(r, Urban());
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::kDestinationNotReached);
}

TEST_CASE("a yellow-line crossing is reported once at first contact") {
  // The EGO box (2 m wide) touches d = 0 when its centre is at d <= 1.
  SimulationRecord r = Trace({1.75, 1.5, 0.9, 0.8, 0.9, 1.75, 1.75}, State(1, {200, 5.25}));
  r.config.ego.destination = r.frames.back().vehicles[0].position;
  const auto v = DetectViolations(r, Urban());
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::kIllegalLineCross);
  CHECK(v[0].frame == 2);
  CHECK(v[0].line == LineKind::kYellow);
}

TEST_CASE("fitness examples") {
  SimulationRecord r = Trace({2.25, 3.0}, State(1, {200, 5.25}));
  r.config.ego.destination = r.frames.back().vehicles[0].position;
  // Closest line approach 1.25 m (box edge at d = 1.25).
  const FitnessVector f = EvaluateFitness(r, Urban());
  CHECK(f.f1 == 0.0);
  CHECK(f.f3 == doctest::Approx(0.8));
  CHECK(MinLineDistance(r, Urban()) == doctest::Approx(1.25));

  const SimulationRecord hit = WithCollision(Trace({1.75}, State(1, {104.6, 1.75})));
  CHECK(EvaluateFitness(hit, Urban()).f2 == doctest::Approx(10.0));

  CHECK_THROWS_AS(EvaluateFitness(SimulationRecord{}, Urban()), Error);
}

TEST_CASE("records round-trip through JSON") {
  Rng rng(6);
  const ScenarioConfig c = RandomConfig(Urban(), rng);
  SimulationRecord r = ExecuteScenario(Urban(), c, BaselineEgo(), 20, 5);
  r.fitness = EvaluateFitness(r, Urban());
  r.liability = AssessRecord(r, Urban());
  CHECK(ParseRecord(SerializeRecord(r)) == r);

  const auto dir = std::filesystem::temp_directory_path() / "npcfuzz_record_test";
  std::filesystem::create_directories(dir);
  SaveRecord((dir / "r.json").string(), r);
  CHECK(LoadRecord((dir / "r.json").string()) == r);
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed records are rejected") {
  auto code = [](std::string_view text) {
    try {
      ParseRecord(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kUsage;
  };
  CHECK(code("{") == ErrorCode::kFormat);
  CHECK(code("{\"schema\": 1}") == ErrorCode::kFormat);
  CHECK(code("[]") == ErrorCode::kFormat);
  CHECK_THROWS_AS(LoadRecord("/nonexistent/dir/r.json"), Error);
}

TEST_CASE("switched window") {
  const VehicleState npc = State(1, {300, 5.25});
  CHECK_FALSE(Switched(Trace(std::vector<double>(30, 1.75), npc), Urban()));

  std::vector<double> change(30, 1.75);
  for (int k = 10; k < 20; ++k) change[k] = 3.5;  // straddling
  for (int k = 20; k < 30; ++k) change[k] = 5.25;
  CHECK(Switched(Trace(change, npc), Urban()));

  // Lane change finished 40 frames before the end: out of the window.
  std::vector<double> old(60, 5.25);
  for (int k = 0; k < 15; ++k) old[k] = 1.75;
  for (int k = 15; k < 20; ++k) old[k] = 3.5;
  CHECK_FALSE(Switched(Trace(old, npc), Urban()));
  // A 50-frame window reaches back into the old lane.
  CHECK(Switched(Trace(old, npc), Urban(), 50));
  // At 45 frames the window opens on the straddle, which has no lane.
  CHECK_FALSE(Switched(Trace(old, npc), Urban(), 45));
}

TEST_CASE("liability rules") {
  // NPC behind the EGO in the same lane: rear-ended by the NPC.
  const auto rear = WithCollision(Trace({1.75}, State(1, {95.3, 1.75})));
  FaultVerdict v = DetermineLiability(rear, 0, Urban());
  CHECK(v.verdict == Verdict::kNpcFault);
  CHECK(v.rule == LiabilityRule::kRearEndByNpc);
  CHECK(v.x > 0);

  // NPC mid lane change while the EGO keeps its lane.
  const auto cut = WithCollision(Trace(std::vector<double>(30, 1.75), State(1, {131, 3.6}, -0.2),
                                       {ManeuverKind::kLeftChange, ManeuverStatus::kRunning}));
  v = DetermineLiability(cut, 0, Urban());
  CHECK(v.verdict == Verdict::kNpcFault);
  CHECK(v.rule == LiabilityRule::kNpcUnsafeLaneChange);

  // EGO behind the NPC in the same lane.
  const auto ego_rear = WithCollision(Trace({1.75}, State(1, {104.7, 1.75})));
  v = DetermineLiability(ego_rear, 0, Urban());
  CHECK(v.verdict == Verdict::kEgoFault);
  CHECK(v.rule == LiabilityRule::kDefaultEgo);
  CHECK(v.x < 0);

  // Not a collision.
  SimulationRecord dnr = Trace({1.75}, State(1, {200, 5.25}));
  dnr.violations = DetectViolations(dnr, Urban());
  REQUIRE(dnr.violations.size() == 1);
  CHECK_THROWS_AS(DetermineLiability(dnr, 0, Urban()), Error);
}

TEST_CASE("EGO fault set arithmetic") {
  std::vector<SimulationRecord> records;
  for (int i = 0; i < 10; ++i) {
    SimulationRecord r = WithCollision(Trace({1.75}, State(1, {104.6, 1.75})));
    FaultVerdict f;
    f.verdict = i < 7 ? Verdict::kEgoFault : Verdict::kNpcFault;
    r.liability = {f};
    records.push_back(r);
  }
  for (int i = 0; i < 3; ++i) {
    SimulationRecord r = Trace({1.75}, State(1, {200, 5.25}));
    r.violations = DetectViolations(r, Urban());
    records.push_back(r);
  }
  CHECK(EgoFaultSet(records).size() == 10);

  std::vector<SimulationRecord> innocent(records.begin(), records.begin() + 10);
  for (auto& r : innocent) r.liability[0].verdict = Verdict::kNpcFault;
  CHECK(EgoFaultSet(innocent).empty());
}

}  // namespace
}  // namespace npcfuzz
