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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "npcfuzz/fitness.h"
#include "npcfuzz/record.h"
#include "npcfuzz/road_model.h"
#include "npcfuzz/scenario_search.h"

namespace npcfuzz {

struct CampaignOptions {
  RoadSpec road;
  uint64_t seed = 1;
  int budget = 0;      // scenarios; 0 = unbounded (needs hours)
  double hours = 0.0;  // wall-clock budget; 0 = none
  double ell = 20.0;
  std::string ego = "baseline";
  std::string out;
  int workers = 0;     // 0 = ADVFUZZ_WORKERS or the hardware concurrency
  SearchParams search;
  FitnessParams fitness;
  /// Progress sink; silent when empty.
  std::function<void(const std::string&)> log;
};

struct GenerationBest {
  int generation = 0;
  int scenarios = 0;
  Objectives best{};
  friend bool operator==(const GenerationBest&, const GenerationBest&) = default;
};

/// Wall-clock seconds spent executing each scenario, keyed by
/// (generation, index). Kept outside the records so that records stay
/// byte-identical across runs.
using TimingTable = std::map<std::pair<int, int>, double>;

struct CampaignReport {
  int scenario_num = 0;
  int violation_num = 0;
  int ego_fault_num = 0;
  double proportion = 0.0;  // percent
  // Simulated plus measured wall time.
  double total_minutes = 0.0;
  std::optional<double> minutes_per_scenario;
  std::optional<double> minutes_per_violation;
  std::optional<double> minutes_per_ego_fault;
  std::optional<double> first_violation_minute;
  std::optional<double> first_ego_fault_minute;
  // Simulated time only.
  double sim_total_minutes = 0.0;
  std::optional<double> first_violation_sim_minute;
  std::optional<double> first_ego_fault_sim_minute;
  std::vector<GenerationBest> fitness_series;
  std::map<std::string, int> histogram;  // violation kind -> count
  int collision_ego_fault = 0;
  int collision_npc_fault = 0;
  int corrupt_records = 0;
  friend bool operator==(const CampaignReport&, const CampaignReport&) = default;
};

/// "87.04" style rendering of a percentage.
std::string FormatPercent(double percent);

/// Metrics over records in (generation, index) order.
CampaignReport BuildReport(std::span<const SimulationRecord> records,
                           const TimingTable& timing);

/// Runs search -> executor -> violations -> liability until the budget is
/// spent. Writes <out>/<generation>/<index>.json per scenario, plus
/// timing.json, campaign.json and report.json. Throws kUsage on bad options
/// and kIo when the output cannot be written.
CampaignReport RunCampaign(const CampaignOptions& options);

/// Recomputes the report from a campaign directory alone. Unreadable
/// records are skipped, reported through `warn`, and counted.
CampaignReport ReportFromDirectory(
    const std::string& dir,
    const std::function<void(const std::string&)>& warn = {});

std::string ReportToJson(const CampaignReport& report);

/// Writes one CSV series ("speed_traces", "fitness" or "histogram") from a
/// campaign directory. Throws kUsage for an unknown kind.
void ExportSeries(const std::string& dir, std::string_view kind,
                  const std::string& out_path);

/// Loads records of a campaign directory in (generation, index) order.
std::vector<SimulationRecord> LoadCampaignRecords(
    const std::string& dir, int* corrupt = nullptr,
    const std::function<void(const std::string&)>& warn = {});

/// Worker count: ADVFUZZ_WORKERS when set to a positive integer, else the
/// hardware concurrency (at least 1).
int DefaultWorkers();

}  // namespace npcfuzz
