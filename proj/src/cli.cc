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

#include "npcfuzz/cli.h"

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "npcfuzz/campaign.h"
#include "npcfuzz/ego_controller.h"
#include "npcfuzz/errors.h"

namespace npcfuzz {

namespace {

using nlohmann::json;

RoadSpec ParseRoad(const std::string& value) {
  if (const auto preset = RoadPreset(value)) return *preset;
  const std::string prefix = "custom:";
  if (value.rfind(prefix, 0) != 0) {
    throw Error(ErrorCode::kUsage, "unknown road '" + value + "'");
  }
  const std::string path = value.substr(prefix.size());
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read road file " + path);
  try {
    const json j = json::parse(in);
    RoadSpec spec;
    spec.lanes = j.value("lanes", spec.lanes);
    spec.lane_width_m = j.value("lane_width_m", spec.lane_width_m);
    spec.length_m = j.value("length_m", spec.length_m);
    spec.bubble_offset_m = j.value("bubble_offset_m", spec.bubble_offset_m);
    spec.bubble_length_m = j.value("bubble_length_m", spec.bubble_length_m);
    spec.yellow_line = j.value("yellow_line", spec.yellow_line);
    BuildRoad(spec);
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kUsage, "bad road file " + path + ": " + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kUsage, "bad road file " + path + ": " + e.what());
  }
}

// Applies a JSON campaign config; command-line flags are applied afterwards
// and take precedence.
void ApplyConfigFile(const std::string& path, CampaignOptions* o, std::string* road) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path);
  try {
    const json j = json::parse(in);
    o->search.tau = j.value("tau", o->search.tau);
    o->search.offspring = j.value("offspring", o->search.offspring);
    o->search.stagnation = j.value("restart_stagnation", o->search.stagnation);
    o->fitness.w1 = j.value("w1", o->fitness.w1);
    o->fitness.w2 = j.value("w2", o->fitness.w2);
    o->fitness.epsilon = j.value("epsilon_m", o->fitness.epsilon);
    o->seed = j.value("seed", o->seed);
    o->budget = j.value("budget", o->budget);
    o->hours = j.value("hours", o->hours);
    o->ell = j.value("ell", o->ell);
    o->ego = j.value("ego", o->ego);
    *road = j.value("road", *road);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kUsage, "bad config " + path + ": " + e.what());
  }
}

int CodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kUsage:
    case ErrorCode::kInvalidGeometry:
      return kExitUsage;
    case ErrorCode::kIo:
      return kExitIo;
    default:
      return kExitInternal;
  }
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adversarial-NPC scenario fuzzer for a 2D multi-lane road"};
  app.require_subcommand(1);

  CampaignOptions opts;
  std::string road = "urban2";
  std::string config_path;
  uint64_t seed = 1;
  int budget = 0;
  double hours = 0.0;
  double ell = 20.0;
  size_t tau = 20;
  std::string ego = "baseline";
  bool quiet = false;

  CLI::App* run = app.add_subcommand("run", "Run a fuzzing campaign");
  run->add_option("--road", road, "urban2 | highway4 | custom:<file.json>");
  auto* o_budget = run->add_option("--budget", budget, "Number of scenarios");
  auto* o_hours = run->add_option("--hours", hours, "Wall-clock budget in hours");
  auto* o_seed = run->add_option("--seed", seed, "Master seed");
  auto* o_ell = run->add_option("--ell", ell, "Perception zone length in metres");
  auto* o_tau = run->add_option("--tau", tau, "Population size");
  run->add_option("--out", opts.out, "Output directory")->required();
  auto* o_ego = run->add_option("--ego", ego, "EGO controller")
                    ->check(CLI::IsMember(EgoControllerNames()));
  run->add_option("--config", config_path, "JSON campaign config");
  run->add_flag("--quiet", quiet, "No progress output");

  std::string dir;
  CLI::App* report = app.add_subcommand("report", "Recompute the report of a campaign");
  report->add_option("dir", dir, "Campaign directory")->required();

  std::string kind;
  std::string export_out;
  CLI::App* exp = app.add_subcommand("export", "Write a CSV series from a campaign");
  exp->add_option("dir", dir, "Campaign directory")->required();
  exp->add_option("--kind", kind, "speed_traces | fitness | histogram")->required();
  exp->add_option("--out", export_out, "CSV path (default <dir>/<kind>.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) {
      if (!config_path.empty()) ApplyConfigFile(config_path, &opts, &road);
      opts.road = ParseRoad(road);
      if (o_budget->count()) opts.budget = budget;
      if (o_hours->count()) opts.hours = hours;
      if (o_seed->count()) opts.seed = seed;
      if (o_ell->count()) opts.ell = ell;
      if (o_tau->count()) opts.search.tau = tau;
      if (o_ego->count()) opts.ego = ego;
      if (!quiet) opts.log = [&err](const std::string& m) { err << m << '\n'; };
      const CampaignReport rep = RunCampaign(opts);
      out << ReportToJson(rep) << '\n';
    } else if (report->parsed()) {
      const CampaignReport rep = ReportFromDirectory(
          dir, [&err](const std::string& m) { err << "warning: " << m << '\n'; });
      out << ReportToJson(rep) << '\n';
    } else if (exp->parsed()) {
      const std::string path = export_out.empty() ? dir + "/" + kind + ".csv" : export_out;
      ExportSeries(dir, kind, path);
      out << path << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return CodeFor(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace npcfuzz
