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

#include "npcfuzz/campaign.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "npcfuzz/errors.h"
#include "npcfuzz/executor.h"
#include "npcfuzz/liability.h"

namespace npcfuzz {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

constexpr ViolationKind kKinds[] = {ViolationKind::kCollision,
                                    ViolationKind::kIllegalLineCross,
                                    ViolationKind::kDestinationNotReached};

uint64_t ScenarioSeed(uint64_t master, int generation, int index) {
  return MixSeed(master, (static_cast<uint64_t>(generation) << 32) |
                             static_cast<uint32_t>(index));
}

double SimulatedSeconds(const SimulationRecord& r) {
  if (r.frames.empty()) return 0.0;
  const int steps = static_cast<int>(r.frames.size()) - 1 + (r.contact ? 1 : 0);
  return steps * kFrameDt;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

json Optional(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void Log(const CampaignOptions& o, const std::string& msg) {
  if (o.log) o.log(msg);
}

std::optional<int> ParseIndex(const std::string& name) {
  if (name.empty() || name.size() > 9) return std::nullopt;
  for (char c : name) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  return std::stoi(name);
}

TimingTable LoadTiming(const fs::path& dir) {
  TimingTable table;
  std::ifstream in(dir / "timing.json");
  if (!in) return table;
  try {
    const json j = json::parse(in);
    for (const json& row : j.at("scenarios")) {
      table[{row.at(0).get<int>(), row.at(1).get<int>()}] = row.at(2).get<double>();
    }
  } catch (const json::exception&) {
    table.clear();
  }
  return table;
}

}  // namespace

int DefaultWorkers() {
  if (const char* env = std::getenv("ADVFUZZ_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min(n, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string FormatPercent(double percent) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", percent);
  return buf;
}

CampaignReport BuildReport(std::span<const SimulationRecord> records,
                           const TimingTable& timing) {
  CampaignReport rep;
  for (ViolationKind k : kKinds) rep.histogram[std::string(ViolationName(k))] = 0;
  rep.scenario_num = static_cast<int>(records.size());

  std::vector<int> faults_per_record(records.size(), 0);
  for (const EgoFault& f : EgoFaultSet(records)) ++faults_per_record[f.record];

  double minutes = 0.0;
  double sim_minutes = 0.0;
  std::map<int, GenerationBest> series;
  for (size_t i = 0; i < records.size(); ++i) {
    const SimulationRecord& r = records[i];
    const double sim = SimulatedSeconds(r) / 60.0;
    const auto it = timing.find({r.generation, r.index});
    const double wall = it == timing.end() ? 0.0 : it->second / 60.0;
    minutes += sim + wall;
    sim_minutes += sim;

    const int violations = static_cast<int>(r.violations.size());
    rep.violation_num += violations;
    rep.ego_fault_num += faults_per_record[i];
    for (const ViolationEvent& v : r.violations) ++rep.histogram[std::string(ViolationName(v.kind))];
    for (const FaultVerdict& v : r.liability) {
      (v.verdict == Verdict::kEgoFault ? rep.collision_ego_fault : rep.collision_npc_fault)++;
    }
    if (violations > 0 && !rep.first_violation_minute) {
      rep.first_violation_minute = minutes;
      rep.first_violation_sim_minute = sim_minutes;
    }
    if (faults_per_record[i] > 0 && !rep.first_ego_fault_minute) {
      rep.first_ego_fault_minute = minutes;
      rep.first_ego_fault_sim_minute = sim_minutes;
    }
    if (r.fitness) {
      auto [pos, fresh] = series.try_emplace(r.generation);
      GenerationBest& g = pos->second;
      g.generation = r.generation;
      const Objectives v = r.fitness->values();
      if (fresh) {
        g.best = v;
      } else {
        for (size_t m = 0; m < v.size(); ++m) g.best[m] = std::max(g.best[m], v[m]);
      }
      ++g.scenarios;
    }
  }
  rep.total_minutes = minutes;
  rep.sim_total_minutes = sim_minutes;
  rep.proportion = rep.violation_num > 0
                       ? 100.0 * rep.ego_fault_num / rep.violation_num
                       : 0.0;
  if (rep.scenario_num > 0) rep.minutes_per_scenario = minutes / rep.scenario_num;
  if (rep.violation_num > 0) rep.minutes_per_violation = minutes / rep.violation_num;
  if (rep.ego_fault_num > 0) rep.minutes_per_ego_fault = minutes / rep.ego_fault_num;
  for (const auto& [gen, best] : series) rep.fitness_series.push_back(best);
  return rep;
}

std::string ReportToJson(const CampaignReport& r) {
  json series = json::array();
  for (const GenerationBest& g : r.fitness_series) {
    series.push_back({{"generation", g.generation},
                      {"scenarios", g.scenarios},
                      {"best_f1", g.best[0]},
                      {"best_f2", g.best[1]},
                      {"best_f3", g.best[2]}});
  }
  json j = {
      {"scenario_num", r.scenario_num},
      {"violation_num", r.violation_num},
      {"ego_fault_num", r.ego_fault_num},
      {"proportion", r.proportion},
      {"proportion_text", FormatPercent(r.proportion)},
      {"total_minutes", r.total_minutes},
      {"minutes_per_scenario", Optional(r.minutes_per_scenario)},
      {"minutes_per_violation", Optional(r.minutes_per_violation)},
      {"minutes_per_ego_fault", Optional(r.minutes_per_ego_fault)},
      {"first_violation_minute", Optional(r.first_violation_minute)},
      {"first_ego_fault_minute", Optional(r.first_ego_fault_minute)},
      {"sim_total_minutes", r.sim_total_minutes},
      {"first_violation_sim_minute", Optional(r.first_violation_sim_minute)},
      {"first_ego_fault_sim_minute", Optional(r.first_ego_fault_sim_minute)},
      {"fitness_series", series},
      {"histogram", r.histogram},
      {"collision_ego_fault", r.collision_ego_fault},
      {"collision_npc_fault", r.collision_npc_fault},
      {"corrupt_records", r.corrupt_records},
  };
  return j.dump(2);
}

CampaignReport RunCampaign(const CampaignOptions& o) {
  if (o.budget <= 0 && !(o.hours > 0.0)) {
    throw Error(ErrorCode::kUsage, "a positive --budget or --hours is required");
  }
  if (o.budget < 0 || o.hours < 0.0) throw Error(ErrorCode::kUsage, "negative budget");
  if (!(o.ell > 0.0)) throw Error(ErrorCode::kUsage, "--ell must be positive");
  if (o.search.tau == 0 || o.search.offspring == 0) {
    throw Error(ErrorCode::kUsage, "population sizes must be positive");
  }
  if (o.out.empty()) throw Error(ErrorCode::kUsage, "--out is required");
  const RoadModel road = BuildRoad(o.road);
  const auto controller = MakeEgoController(o.ego);

  const fs::path out(o.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw Error(ErrorCode::kIo, "cannot create output directory " + o.out);
  }

  const int workers = o.workers > 0 ? o.workers : DefaultWorkers();
  const auto started = Clock::now();
  auto elapsed_hours = [&] {
    return std::chrono::duration<double>(Clock::now() - started).count() / 3600.0;
  };

  ScenarioSearch search(road, o.seed, o.search);
  std::vector<SimulationRecord> all;
  TimingTable timing;
  int remaining = o.budget > 0 ? o.budget : std::numeric_limits<int>::max();
  while (remaining > 0 && !(o.hours > 0.0 && elapsed_hours() >= o.hours)) {
    const int gen = search.generation();
    std::vector<ScenarioConfig> batch = search.Propose();
    if (static_cast<int>(batch.size()) > remaining) batch.resize(remaining);

    std::vector<SimulationRecord> recs(batch.size());
    std::vector<double> wall(batch.size(), 0.0);
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
      for (size_t i = next++; i < batch.size(); i = next++) {
        try {
          const auto t0 = Clock::now();
          const uint64_t seed = ScenarioSeed(o.seed, gen, static_cast<int>(i));
          SimulationRecord r = ExecuteScenario(road, batch[i], *controller, o.ell, seed);
          r.generation = gen;
          r.index = static_cast<int>(i);
          r.fitness = EvaluateFitness(r, road, o.fitness);
          r.liability = AssessRecord(r, road);
          wall[i] = std::chrono::duration<double>(Clock::now() - t0).count();
          recs[i] = std::move(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    const int n_threads = std::min<int>(workers, static_cast<int>(batch.size()));
    if (n_threads <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
      for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    const fs::path gen_dir = out / std::to_string(gen);
    fs::create_directories(gen_dir, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + gen_dir.string());
    std::vector<FitnessVector> fitness;
    int found = 0;
    for (size_t i = 0; i < recs.size(); ++i) {
      SaveRecord((gen_dir / (std::to_string(i) + ".json")).string(), recs[i]);
      timing[{gen, static_cast<int>(i)}] = wall[i];
      fitness.push_back(*recs[i].fitness);
      found += static_cast<int>(recs[i].violations.size());
      all.push_back(std::move(recs[i]));
    }
    const bool restarted = search.Report(fitness);
    remaining -= static_cast<int>(batch.size());
    Log(o, "generation " + std::to_string(gen) + ": " + std::to_string(batch.size()) +
               " scenarios, " + std::to_string(found) + " violations" +
               (restarted ? ", restart" : ""));
  }

  json timing_json = {{"scenarios", json::array()}};
  for (const auto& [key, seconds] : timing) {
    timing_json["scenarios"].push_back({key.first, key.second, seconds});
  }
  WriteText(out / "timing.json", timing_json.dump());
  const json manifest = {
      {"seed", o.seed},
      {"road", {{"lanes", o.road.lanes},
                {"lane_width_m", o.road.lane_width_m},
                {"length_m", o.road.length_m},
                {"bubble_offset_m", o.road.bubble_offset_m},
                {"bubble_length_m", o.road.bubble_length_m},
                {"yellow_line", o.road.yellow_line}}},
      {"ell", o.ell},
      {"ego", o.ego},
      {"budget", o.budget},
      {"hours", o.hours},
      {"tau", o.search.tau},
      {"offspring", o.search.offspring},
      {"restart_stagnation", o.search.stagnation},
      {"w1", o.fitness.w1},
      {"w2", o.fitness.w2},
      {"epsilon_m", o.fitness.epsilon},
      {"generations", search.generation()},
      {"restarts", search.restarts()},
  };
  WriteText(out / "campaign.json", manifest.dump(2));
  const CampaignReport report = BuildReport(all, timing);
  WriteText(out / "report.json", ReportToJson(report));
  return report;
}

std::vector<SimulationRecord> LoadCampaignRecords(
    const std::string& dir, int* corrupt,
    const std::function<void(const std::string&)>& warn) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw Error(ErrorCode::kIo, "not a directory: " + dir);
  std::vector<std::pair<std::pair<int, int>, fs::path>> files;
  for (const auto& gen_entry : fs::directory_iterator(root)) {
    if (!gen_entry.is_directory()) continue;
    const auto gen = ParseIndex(gen_entry.path().filename().string());
    if (!gen) continue;
    for (const auto& f : fs::directory_iterator(gen_entry.path())) {
      if (!f.is_regular_file() || f.path().extension() != ".json") continue;
      const auto idx = ParseIndex(f.path().stem().string());
      if (idx) files.push_back({{*gen, *idx}, f.path()});
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<SimulationRecord> out;
  int bad = 0;
  for (const auto& [key, path] : files) {
    try {
      out.push_back(LoadRecord(path.string()));
    } catch (const Error& e) {
      ++bad;
      if (warn) warn("skipping " + path.string() + ": " + e.what());
    }
  }
  if (corrupt) *corrupt = bad;
  return out;
}

CampaignReport ReportFromDirectory(const std::string& dir,
                                   const std::function<void(const std::string&)>& warn) {
  int corrupt = 0;
  const std::vector<SimulationRecord> records = LoadCampaignRecords(dir, &corrupt, warn);
  CampaignReport rep = BuildReport(records, LoadTiming(dir));
  rep.corrupt_records = corrupt;
  return rep;
}

void ExportSeries(const std::string& dir, std::string_view kind,
                  const std::string& out_path) {
  if (kind != "speed_traces" && kind != "fitness" && kind != "histogram") {
    throw Error(ErrorCode::kUsage, "unknown export kind: " + std::string(kind));
  }
  const std::vector<SimulationRecord> records = LoadCampaignRecords(dir);
  std::ostringstream csv;
  csv.precision(17);
  if (kind == "speed_traces") {
    csv << "generation,index,frame,time_s,vehicle,speed_mps\n";
    for (const SimulationRecord& r : records) {
      for (const Frame& f : r.frames) {
        for (const VehicleState& v : f.vehicles) {
          csv << r.generation << ',' << r.index << ',' << f.index << ','
              << f.time() << ',' << v.id << ',' << v.speed << '\n';
        }
      }
    }
  } else if (kind == "fitness") {
    const CampaignReport rep = BuildReport(records, {});
    csv << "generation,scenarios,best_f1,best_f2,best_f3\n";
    for (const GenerationBest& g : rep.fitness_series) {
      csv << g.generation << ',' << g.scenarios << ',' << g.best[0] << ','
          << g.best[1] << ',' << g.best[2] << '\n';
    }
  } else {
    const CampaignReport rep = BuildReport(records, {});
    csv << "kind,count\n";
    for (ViolationKind k : kKinds) {
      const std::string name(ViolationName(k));
      csv << name << ',' << rep.histogram.at(name) << '\n';
    }
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + out_path);
  out << csv.str();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + out_path);
}

}  // namespace npcfuzz
