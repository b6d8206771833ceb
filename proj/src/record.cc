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

#include "npcfuzz/record.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "npcfuzz/errors.h"

namespace npcfuzz {

using nlohmann::json;

namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kFormat, "record: " + what);
}

template <typename Enum, typename NameFn, size_t N>
Enum EnumFromName(const std::string& name, NameFn fn, const Enum (&values)[N],
                  const char* what) {
  for (Enum v : values) {
    if (fn(v) == name) return v;
  }
  Malformed(std::string("unknown ") + what + " '" + name + "'");
}

constexpr Outcome kOutcomes[] = {Outcome::kCompleted, Outcome::kCollisionStopped};
constexpr ViolationKind kViolationKinds[] = {ViolationKind::kCollision,
                                             ViolationKind::kIllegalLineCross,
                                             ViolationKind::kDestinationNotReached};
constexpr Verdict kVerdicts[] = {Verdict::kEgoFault, Verdict::kNpcFault};
constexpr LiabilityRule kRules[] = {LiabilityRule::kRearEndByNpc,
                                    LiabilityRule::kNpcUnsafeLaneChange,
                                    LiabilityRule::kDefaultEgo};
constexpr LineKind kLineKinds[] = {LineKind::kYellow, LineKind::kEdge};
constexpr ManeuverStatus kStatuses[] = {ManeuverStatus::kIdle, ManeuverStatus::kRunning};

json PointJson(Point p) { return json::array({p.s, p.d}); }
Point PointFrom(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json StateJson(const VehicleState& v) {
  return json::array({v.position.s, v.position.d, v.heading, v.speed});
}

json ManeuverJson(const ManeuverSnapshot& m) {
  return json::array({ManeuverName(m.kind), StatusName(m.status)});
}

ManeuverSnapshot ManeuverFrom(const json& j) {
  ManeuverSnapshot m;
  m.kind = EnumFromName(j.at(0).get<std::string>(), ManeuverName, kAllManeuvers,
                        "maneuver");
  m.status = EnumFromName(j.at(1).get<std::string>(), StatusName, kStatuses, "status");
  return m;
}

struct VehicleInfo {
  int id;
  VehicleKind kind;
  double length;
  double width;
};

std::vector<VehicleInfo> VehiclesOf(const SimulationRecord& r) {
  std::vector<VehicleInfo> out;
  const std::vector<VehicleState>* states = nullptr;
  if (!r.frames.empty()) {
    states = &r.frames.front().vehicles;
  } else if (r.contact) {
    states = &r.contact->states;
  }
  if (states) {
    for (const VehicleState& v : *states) out.push_back({v.id, v.kind, v.length, v.width});
    return out;
  }
  out.push_back({0, VehicleKind::kEgo, kEgoDims.length, kEgoDims.width});
  for (size_t k = 0; k < r.config.npcs.size(); ++k) {
    out.push_back({static_cast<int>(k) + 1, VehicleKind::kNpc, kNpcDims.length,
                   kNpcDims.width});
  }
  return out;
}

json StatesJson(const std::vector<VehicleState>& states) {
  json arr = json::array();
  for (const VehicleState& v : states) arr.push_back(StateJson(v));
  return arr;
}

std::vector<VehicleState> StatesFrom(const json& arr,
                                     const std::vector<VehicleInfo>& info) {
  if (arr.size() != info.size()) Malformed("state count differs from vehicle list");
  std::vector<VehicleState> out;
  out.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& a = arr[i];
    VehicleState v;
    v.id = info[i].id;
    v.kind = info[i].kind;
    v.length = info[i].length;
    v.width = info[i].width;
    v.position = {a.at(0).get<double>(), a.at(1).get<double>()};
    v.heading = a.at(2).get<double>();
    v.speed = a.at(3).get<double>();
    out.push_back(v);
  }
  return out;
}

json ConfigJson(const ScenarioConfig& c) {
  json npcs = json::array();
  for (const Point& p : c.npcs) npcs.push_back(PointJson(p));
  return {
      {"ego", {{"start", PointJson(c.ego.start)},
               {"destination", PointJson(c.ego.destination)}}},
      {"npcs", npcs},
      {"weather", {{"rain", c.weather.rain},
                   {"fog", c.weather.fog},
                   {"wetness", c.weather.wetness},
                   {"cloudness", c.weather.cloudness},
                   {"time", c.weather.time}}},
      {"max_frames", c.max_frames},
  };
}

ScenarioConfig ConfigFrom(const json& j) {
  ScenarioConfig c;
  c.ego.start = PointFrom(j.at("ego").at("start"));
  c.ego.destination = PointFrom(j.at("ego").at("destination"));
  for (const json& p : j.at("npcs")) c.npcs.push_back(PointFrom(p));
  const json& w = j.at("weather");
  c.weather.rain = w.at("rain").get<double>();
  c.weather.fog = w.at("fog").get<double>();
  c.weather.wetness = w.at("wetness").get<double>();
  c.weather.cloudness = w.at("cloudness").get<double>();
  c.weather.time = w.at("time").get<int>();
  c.max_frames = j.at("max_frames").get<int>();
  return c;
}

}  // namespace

std::string_view OutcomeName(Outcome outcome) {
  return outcome == Outcome::kCompleted ? "Completed" : "CollisionStopped";
}

std::string_view ViolationName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kCollision: return "Collision";
    case ViolationKind::kIllegalLineCross: return "IllegalLineCross";
    case ViolationKind::kDestinationNotReached: return "DestinationNotReached";
  }
  return "?";
}

std::string_view VerdictName(Verdict v) {
  return v == Verdict::kEgoFault ? "EGO_Fault" : "NPC_Fault";
}

std::string_view RuleName(LiabilityRule r) {
  switch (r) {
    case LiabilityRule::kRearEndByNpc: return "RearEndByNPC";
    case LiabilityRule::kNpcUnsafeLaneChange: return "NPCUnsafeLaneChange";
    case LiabilityRule::kDefaultEgo: return "Default_EGO";
  }
  return "?";
}

std::string SerializeRecord(const SimulationRecord& r) {
  json j;
  j["schema"] = kRecordSchema;
  j["seed"] = r.seed;
  j["generation"] = r.generation;
  j["index"] = r.index;
  j["road"] = {{"lanes", r.road.lanes},
               {"lane_width_m", r.road.lane_width_m},
               {"length_m", r.road.length_m},
               {"bubble_offset_m", r.road.bubble_offset_m},
               {"bubble_length_m", r.road.bubble_length_m},
               {"yellow_line", r.road.yellow_line}};
  j["params"] = {{"ell", r.ell}, {"ego", r.ego_controller}};
  j["config"] = ConfigJson(r.config);

  json vehicles = json::array();
  for (const VehicleInfo& v : VehiclesOf(r)) {
    vehicles.push_back({{"id", v.id},
                        {"kind", v.kind == VehicleKind::kEgo ? "ego" : "npc"},
                        {"length", v.length},
                        {"width", v.width}});
  }
  j["vehicles"] = vehicles;

  json frames = json::array();
  for (const Frame& f : r.frames) {
    json man = json::array();
    for (const ManeuverSnapshot& m : f.maneuvers) man.push_back(ManeuverJson(m));
    frames.push_back({{"k", f.index}, {"states", StatesJson(f.vehicles)}, {"maneuvers", man}});
  }
  j["frames"] = frames;

  if (r.contact) {
    j["collision"] = {{"frame", r.contact->frame},
                      {"npc_id", r.contact->npc_id},
                      {"states", StatesJson(r.contact->states)}};
  } else {
    j["collision"] = nullptr;
  }

  json violations = json::array();
  for (const ViolationEvent& v : r.violations) {
    json pos = json::array();
    for (const Point& p : v.positions) pos.push_back(PointJson(p));
    violations.push_back(
        {{"kind", ViolationName(v.kind)},
         {"frame", v.frame},
         {"participants", v.participants},
         {"positions", pos},
         {"npc_maneuver", v.npc_maneuver ? ManeuverJson(*v.npc_maneuver) : json(nullptr)},
         {"line", v.line ? json(LineKindName(*v.line)) : json(nullptr)}});
  }
  j["violations"] = violations;
  j["outcome"] = OutcomeName(r.outcome);
  if (r.fitness) {
    j["fitness"] = {{"f1", r.fitness->f1}, {"f2", r.fitness->f2}, {"f3", r.fitness->f3}};
  } else {
    j["fitness"] = nullptr;
  }

  json liability = json::array();
  for (const FaultVerdict& v : r.liability) {
    liability.push_back(
        {{"violation", v.violation},
         {"verdict", VerdictName(v.verdict)},
         {"rule", RuleName(v.rule)},
         {"evidence", {{"x", v.x},
                       {"ego_lane", v.ego_lane},
                       {"npc_lane", v.npc_lane},
                       {"switched", v.switched},
                       {"npc_maneuver", ManeuverJson(v.npc_maneuver)},
                       {"both_changing", v.both_changing}}}});
  }
  j["liability"] = liability;
  return j.dump();
}

SimulationRecord ParseRecord(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    Malformed(e.what());
  }
  try {
    SimulationRecord r;
    if (j.at("schema").get<int>() != kRecordSchema) Malformed("unsupported schema");
    r.seed = j.at("seed").get<uint64_t>();
    r.generation = j.at("generation").get<int>();
    r.index = j.at("index").get<int>();
    const json& road = j.at("road");
    r.road.lanes = road.at("lanes").get<int>();
    r.road.lane_width_m = road.at("lane_width_m").get<double>();
    r.road.length_m = road.at("length_m").get<double>();
    r.road.bubble_offset_m = road.at("bubble_offset_m").get<double>();
    r.road.bubble_length_m = road.at("bubble_length_m").get<double>();
    r.road.yellow_line = road.at("yellow_line").get<bool>();
    r.ell = j.at("params").at("ell").get<double>();
    r.ego_controller = j.at("params").at("ego").get<std::string>();
    r.config = ConfigFrom(j.at("config"));

    std::vector<VehicleInfo> info;
    for (const json& v : j.at("vehicles")) {
      const std::string kind = v.at("kind").get<std::string>();
      if (kind != "ego" && kind != "npc") Malformed("unknown vehicle kind " + kind);
      info.push_back({v.at("id").get<int>(),
                      kind == "ego" ? VehicleKind::kEgo : VehicleKind::kNpc,
                      v.at("length").get<double>(), v.at("width").get<double>()});
    }
    for (const json& f : j.at("frames")) {
      Frame frame;
      frame.index = f.at("k").get<int>();
      frame.vehicles = StatesFrom(f.at("states"), info);
      for (const json& m : f.at("maneuvers")) frame.maneuvers.push_back(ManeuverFrom(m));
      r.frames.push_back(std::move(frame));
    }
    const json& c = j.at("collision");
    if (!c.is_null()) {
      ContactInfo contact;
      contact.frame = c.at("frame").get<int>();
      contact.npc_id = c.at("npc_id").get<int>();
      contact.states = StatesFrom(c.at("states"), info);
      r.contact = std::move(contact);
    }
    for (const json& v : j.at("violations")) {
      ViolationEvent e;
      e.kind = EnumFromName(v.at("kind").get<std::string>(), ViolationName,
                            kViolationKinds, "violation");
      e.frame = v.at("frame").get<int>();
      e.participants = v.at("participants").get<std::vector<int>>();
      for (const json& p : v.at("positions")) e.positions.push_back(PointFrom(p));
      if (!v.at("npc_maneuver").is_null()) e.npc_maneuver = ManeuverFrom(v.at("npc_maneuver"));
      if (!v.at("line").is_null()) {
        e.line = EnumFromName(v.at("line").get<std::string>(),
                              [](LineKind k) { return std::string_view(LineKindName(k)); },
                              kLineKinds, "line kind");
      }
      r.violations.push_back(std::move(e));
    }
    r.outcome = EnumFromName(j.at("outcome").get<std::string>(), OutcomeName, kOutcomes,
                             "outcome");
    const json& fit = j.at("fitness");
    if (!fit.is_null()) {
      r.fitness = FitnessVector{fit.at("f1").get<double>(), fit.at("f2").get<double>(),
                                fit.at("f3").get<double>()};
    }
    for (const json& v : j.at("liability")) {
      FaultVerdict fv;
      fv.violation = v.at("violation").get<int>();
      fv.verdict = EnumFromName(v.at("verdict").get<std::string>(), VerdictName, kVerdicts,
                                "verdict");
      fv.rule = EnumFromName(v.at("rule").get<std::string>(), RuleName, kRules, "rule");
      const json& ev = v.at("evidence");
      fv.x = ev.at("x").get<double>();
      fv.ego_lane = ev.at("ego_lane").get<int>();
      fv.npc_lane = ev.at("npc_lane").get<int>();
      fv.switched = ev.at("switched").get<bool>();
      fv.npc_maneuver = ManeuverFrom(ev.at("npc_maneuver"));
      fv.both_changing = ev.at("both_changing").get<bool>();
      r.liability.push_back(fv);
    }
    return r;
  } catch (const json::exception& e) {
    Malformed(e.what());
  }
}

void SaveRecord(const std::string& path, const SimulationRecord& record) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << SerializeRecord(record) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

SimulationRecord LoadRecord(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseRecord(buf.str());
}

}  // namespace npcfuzz
