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

#include "npcfuzz/executor.h"

#include <algorithm>

#include "npcfuzz/errors.h"

namespace npcfuzz {

namespace {

VehicleState InitialState(int id, VehicleKind kind, Point p, double speed, BoxDims dims) {
  VehicleState v;
  v.id = id;
  v.kind = kind;
  v.position = p;
  v.heading = 0.0;
  v.speed = speed;
  v.length = dims.length;
  v.width = dims.width;
  return v;
}

}  // namespace

SimulationRecord ExecuteScenario(const RoadModel& road, const ScenarioConfig& config,
                                 const EgoController& controller, double ell,
                                 uint64_t seed, const ExecutorOptions& options) {
  ValidateConfig(config, road, options.allow_empty_npcs);
  static const BehaviorTree kDefaultTree = BehaviorTree::Default();
  const BehaviorTree& tree = options.tree ? *options.tree : kDefaultTree;

  SimulationRecord rec;
  rec.seed = seed;
  rec.road = road.spec();
  rec.ell = ell;
  rec.ego_controller = std::string(controller.name());
  rec.config = config;

  VehicleState ego = InitialState(0, VehicleKind::kEgo, config.ego.start,
                                  options.ego_initial_speed, kEgoDims);
  std::vector<AdversarialNpc> agents;
  agents.reserve(config.npcs.size());
  for (size_t k = 0; k < config.npcs.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    agents.emplace_back(InitialState(id, VehicleKind::kNpc, config.npcs[k],
                                     options.npc.initial_speed, kNpcDims),
                        MixSeed(seed, static_cast<uint64_t>(id)), options.npc,
                        options.planner);
  }

  std::vector<VehicleState> npc_states(agents.size());
  for (int f = 0;; ++f) {
    const bool monitoring = ego.position.s >= road.bubble_begin();
    std::vector<std::optional<DriveCommand>> scripted(agents.size());
    for (size_t k = 0; k < agents.size(); ++k) {
      if (options.npc_script) {
        scripted[k] = options.npc_script(static_cast<int>(k), agents[k].state(), f);
      }
      if (!scripted[k]) agents[k].Decide(ego, road, tree, ell, monitoring);
    }

    Frame frame;
    frame.index = f;
    frame.vehicles.push_back(ego);
    for (const AdversarialNpc& a : agents) {
      frame.vehicles.push_back(a.state());
      frame.maneuvers.push_back({a.maneuver().kind, a.maneuver().status});
    }
    rec.frames.push_back(std::move(frame));
    if (f + 1 >= config.max_frames) break;

    for (size_t k = 0; k < agents.size(); ++k) npc_states[k] = agents[k].state();
    const DriveCommand ego_cmd =
        controller.Decide(ego, npc_states, config.ego.destination, road);
    const VehicleState ego_next =
        StepVehicle(ego, ego_cmd.target, ego_cmd.speed, kFrameDt, options.limits);
    std::vector<VehicleState> npc_next(agents.size());
    for (size_t k = 0; k < agents.size(); ++k) {
      if (agents[k].wrecked()) {
        npc_next[k] = agents[k].state();
        continue;
      }
      const DriveCommand cmd = scripted[k] ? *scripted[k] : agents[k].Control(road);
      npc_next[k] = StepVehicle(agents[k].state(), cmd.target, cmd.speed, kFrameDt,
                                options.limits);
    }

    for (size_t k = 0; k < agents.size(); ++k) {
      if (BoxesCollide(ego_next.Box(), npc_next[k].Box())) {
        ContactInfo contact;
        contact.frame = f + 1;
        contact.npc_id = npc_next[k].id;
        contact.states.push_back(ego_next);
        contact.states.insert(contact.states.end(), npc_next.begin(), npc_next.end());
        rec.contact = std::move(contact);
        rec.outcome = Outcome::kCollisionStopped;
        break;
      }
    }
    if (rec.contact) break;

    std::vector<bool> wreck(agents.size(), false);
    for (size_t i = 0; i < agents.size(); ++i) {
      for (size_t j = i + 1; j < agents.size(); ++j) {
        if (agents[i].wrecked() && agents[j].wrecked()) continue;
        if (BoxesCollide(npc_next[i].Box(), npc_next[j].Box())) {
          wreck[i] = true;
          wreck[j] = true;
        }
      }
    }
    ego = ego_next;
    for (size_t k = 0; k < agents.size(); ++k) {
      if (agents[k].wrecked()) continue;
      agents[k].Advance(npc_next[k]);
      if (wreck[k]) agents[k].Wreck();
    }
  }

  rec.violations = DetectViolations(rec, road);
  return rec;
}

std::vector<ViolationEvent> DetectViolations(const SimulationRecord& record,
                                             const RoadModel& road) {
  std::vector<ViolationEvent> out;
  if (record.frames.empty()) return out;

  for (const Frame& f : record.frames) {
    const VehicleState& ego = f.vehicles.front();
    const OrientedBox box = ego.Box();
    std::optional<LineKind> touched;
    for (const LineSpec& line : road.illegal_lines()) {
      const double dist = BoxSegmentDistance(box, {0.0, line.offset},
                                             {road.length(), line.offset});
      if (dist <= kContactTolerance) {
        touched = line.kind;
        break;
      }
    }
    if (touched) {
      ViolationEvent e;
      e.kind = ViolationKind::kIllegalLineCross;
      e.frame = f.index;
      e.participants = {ego.id};
      e.positions = {ego.position};
      e.line = touched;
      out.push_back(e);
      break;
    }
  }

  if (record.contact) {
    const ContactInfo& c = *record.contact;
    ViolationEvent e;
    e.kind = ViolationKind::kCollision;
    e.frame = c.frame;
    e.participants = {0, c.npc_id};
    for (int id : e.participants) {
      for (const VehicleState& v : c.states) {
        if (v.id == id) e.positions.push_back(v.position);
      }
    }
    const Frame& last = record.frames.back();
    const size_t slot = static_cast<size_t>(c.npc_id - 1);
    if (slot < last.maneuvers.size()) e.npc_maneuver = last.maneuvers[slot];
    out.push_back(e);
  }

  if (record.outcome == Outcome::kCompleted) {
    const VehicleState& ego = record.frames.back().vehicles.front();
    if (Distance(ego.position, record.config.ego.destination) > 0.5 * ego.length) {
      ViolationEvent e;
      e.kind = ViolationKind::kDestinationNotReached;
      e.frame = record.frames.back().index;
      e.participants = {ego.id};
      e.positions = {ego.position};
      out.push_back(e);
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const ViolationEvent& a,
                                               const ViolationEvent& b) {
    return a.frame < b.frame;
  });
  return out;
}

}  // namespace npcfuzz
