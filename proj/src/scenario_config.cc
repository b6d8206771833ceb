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

#include "npcfuzz/scenario_config.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "npcfuzz/errors.h"
#include "npcfuzz/kinematics.h"

namespace npcfuzz {

namespace {

constexpr int kMaxDraws = 100;

OrientedBox StartBox(Point p, BoxDims dims) {
  return {p, 0.0, dims.length, dims.width};
}

bool LaterallyOnRoad(const RoadModel& road, double d, double width) {
  return d - 0.5 * width >= 0.0 && d + 0.5 * width <= road.width();
}

bool InUnit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kSetup, what);
}

Point SampleLanePoint(const RoadModel& road, Rng& rng, double s_lo, double s_hi) {
  const int lane = rng.UniformInt(0, road.lane_count() - 1);
  return {rng.Uniform(s_lo, s_hi), road.Centerline(lane)};
}

Point SampleEgoStart(const RoadModel& road, Rng& rng) {
  const double lo = 0.5 * kEgoDims.length + 1.0;
  const double hi = road.bubble_begin() - 0.5 * kEgoDims.length - 1.0;
  if (hi < lo) throw Error(ErrorCode::kGeneration, "no room before the bubble");
  return SampleLanePoint(road, rng, lo, hi);
}

Point SampleDestination(const RoadModel& road, Rng& rng) {
  const double mid = 0.5 * (road.bubble_end() + road.length());
  const double lo = std::min(road.bubble_end() + 5.0, mid);
  const double hi = std::max(lo, std::min(road.bubble_end() + 50.0, road.length() - 10.0));
  return SampleLanePoint(road, rng, lo, hi);
}

Point SampleNpcStart(const RoadModel& road, Rng& rng) {
  const double lo = road.bubble_begin() + 0.5 * kNpcDims.length;
  const double hi = road.bubble_end() - 0.5 * kNpcDims.length;
  if (hi < lo) throw Error(ErrorCode::kGeneration, "bubble shorter than a vehicle");
  return SampleLanePoint(road, rng, lo, hi);
}

double WeatherGene(const Weather& w, int g) {
  switch (g) {
    case 0: return w.rain;
    case 1: return w.fog;
    case 2: return w.wetness;
    case 3: return w.cloudness;
    default: return w.time;
  }
}

void SetWeatherGene(Weather* w, int g, double value) {
  switch (g) {
    case 0: w->rain = value; break;
    case 1: w->fog = value; break;
    case 2: w->wetness = value; break;
    case 3: w->cloudness = value; break;
    default: w->time = static_cast<int>(value); break;
  }
}

int GeneCount(const ScenarioConfig& a, const ScenarioConfig& b, Chromosome c) {
  switch (c) {
    case Chromosome::kEgo: return kEgoGenes;
    case Chromosome::kNpcs:
      return static_cast<int>(std::min(a.npcs.size(), b.npcs.size()));
    case Chromosome::kWeather: return kWeatherGenes;
  }
  return 0;
}

// Exchanges genes [cut, end) of chromosome c between the two configs.
void SwapTail(ScenarioConfig* a, ScenarioConfig* b, Chromosome c, int cut) {
  switch (c) {
    case Chromosome::kEgo:
      if (cut <= 0) std::swap(a->ego.start, b->ego.start);
      std::swap(a->ego.destination, b->ego.destination);
      break;
    case Chromosome::kNpcs: {
      std::vector<Point> ta(a->npcs.begin() + cut, a->npcs.end());
      std::vector<Point> tb(b->npcs.begin() + cut, b->npcs.end());
      a->npcs.resize(cut);
      b->npcs.resize(cut);
      a->npcs.insert(a->npcs.end(), tb.begin(), tb.end());
      b->npcs.insert(b->npcs.end(), ta.begin(), ta.end());
      break;
    }
    case Chromosome::kWeather:
      for (int g = cut; g < kWeatherGenes; ++g) {
        const double va = WeatherGene(a->weather, g);
        SetWeatherGene(&a->weather, g, WeatherGene(b->weather, g));
        SetWeatherGene(&b->weather, g, va);
      }
      break;
  }
}

}  // namespace

void ValidateConfig(const ScenarioConfig& config, const RoadModel& road,
                    bool allow_empty_npcs) {
  Require(config.max_frames > 0, "max_frames must be positive");
  Require(allow_empty_npcs || !config.npcs.empty(), "no NPCs");

  const Point e = config.ego.start;
  Require(IsFinite(e), "EGO start not finite");
  Require(e.s - 0.5 * kEgoDims.length >= 0.0 &&
              e.s + 0.5 * kEgoDims.length <= road.bubble_begin(),
          "EGO start must lie before the bubble");
  Require(LaterallyOnRoad(road, e.d, kEgoDims.width), "EGO start off the road");

  const Point dest = config.ego.destination;
  Require(IsFinite(dest), "destination not finite");
  Require(dest.s > road.bubble_end() && dest.s <= road.length(),
          "destination must lie beyond the bubble");
  Require(dest.d >= 0.0 && dest.d <= road.width(), "destination off the road");

  std::vector<OrientedBox> boxes = {StartBox(e, kEgoDims)};
  for (const Point& n : config.npcs) {
    Require(IsFinite(n), "NPC start not finite");
    Require(n.s >= road.bubble_begin() && n.s <= road.bubble_end(),
            "NPC start must lie inside the bubble");
    Require(LaterallyOnRoad(road, n.d, kNpcDims.width), "NPC start off the road");
    boxes.push_back(StartBox(n, kNpcDims));
  }
  for (size_t i = 0; i < boxes.size(); ++i) {
    for (size_t j = i + 1; j < boxes.size(); ++j) {
      Require(!BoxesCollide(boxes[i], boxes[j]), "initial boxes overlap");
    }
  }

  const Weather& w = config.weather;
  Require(InUnit(w.rain) && InUnit(w.fog) && InUnit(w.wetness) && InUnit(w.cloudness),
          "weather values must lie in [0, 1]");
  Require(w.time >= 0 && w.time <= 24, "time of day must lie in [0, 24]");
}

bool IsValidConfig(const ScenarioConfig& config, const RoadModel& road) {
  try {
    ValidateConfig(config, road);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string Fingerprint(const ScenarioConfig& c) {
  std::ostringstream out;
  auto pos = [&](Point p) { out << std::llround(p.s) << ',' << std::llround(p.d) << ';'; };
  auto q = [](double x) { return std::llround(x / 0.05); };
  out << 'E';
  pos(c.ego.start);
  pos(c.ego.destination);
  out << 'N';
  for (const Point& n : c.npcs) pos(n);
  out << 'W' << q(c.weather.rain) << ',' << q(c.weather.fog) << ','
      << q(c.weather.wetness) << ',' << q(c.weather.cloudness) << ','
      << c.weather.time << 'F' << c.max_frames;
  return out.str();
}

ScenarioConfig RandomConfig(const RoadModel& road, Rng& rng, int max_frames) {
  ScenarioConfig c;
  c.max_frames = max_frames;
  c.ego.start = SampleEgoStart(road, rng);
  c.ego.destination = SampleDestination(road, rng);
  for (int k = 0; k < road.lane_count(); ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxDraws && !placed; ++attempt) {
      const Point p = SampleNpcStart(road, rng);
      const OrientedBox box = StartBox(p, kNpcDims);
      placed = !BoxesCollide(box, StartBox(c.ego.start, kEgoDims)) &&
               std::none_of(c.npcs.begin(), c.npcs.end(), [&](Point q) {
                 return BoxesCollide(box, StartBox(q, kNpcDims));
               });
      if (placed) c.npcs.push_back(p);
    }
    if (!placed) throw Error(ErrorCode::kGeneration, "could not place NPCs");
  }
  c.weather.rain = rng.Uniform();
  c.weather.fog = rng.Uniform();
  c.weather.wetness = rng.Uniform();
  c.weather.cloudness = rng.Uniform();
  c.weather.time = rng.UniformInt(0, 24);
  return c;
}

ScenarioConfig Mutate(const ScenarioConfig& config, const RoadModel& road, Rng& rng) {
  const auto chrom = static_cast<Chromosome>(rng.UniformInt(0, 2));
  int gene = 0;
  switch (chrom) {
    case Chromosome::kEgo: gene = rng.UniformInt(0, kEgoGenes - 1); break;
    case Chromosome::kNpcs:
      if (config.npcs.empty()) throw Error(ErrorCode::kMutation, "no NPC genes");
      gene = rng.UniformInt(0, static_cast<int>(config.npcs.size()) - 1);
      break;
    case Chromosome::kWeather: gene = rng.UniformInt(0, kWeatherGenes - 1); break;
  }
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    ScenarioConfig child = config;
    bool changed = false;
    switch (chrom) {
      case Chromosome::kEgo:
        if (gene == 0) {
          child.ego.start = SampleEgoStart(road, rng);
          changed = child.ego.start != config.ego.start;
        } else {
          child.ego.destination = SampleDestination(road, rng);
          changed = child.ego.destination != config.ego.destination;
        }
        break;
      case Chromosome::kNpcs:
        child.npcs[gene] = SampleNpcStart(road, rng);
        changed = child.npcs[gene] != config.npcs[gene];
        break;
      case Chromosome::kWeather:
        SetWeatherGene(&child.weather, gene,
                       gene == 4 ? rng.UniformInt(0, 24) : rng.Uniform());
        changed = WeatherGene(child.weather, gene) != WeatherGene(config.weather, gene);
        break;
    }
    if (changed && IsValidConfig(child, road)) return child;
  }
  throw Error(ErrorCode::kMutation, "no valid value for the chosen gene");
}

std::pair<ScenarioConfig, ScenarioConfig> Crossover(const ScenarioConfig& a,
                                                    const ScenarioConfig& b,
                                                    const RoadModel& road, Rng& rng) {
  const int first = rng.UniformInt(0, 2);
  const int n0 = GeneCount(a, b, static_cast<Chromosome>(first));
  const int cut0 = n0 > 0 ? rng.UniformInt(0, n0 - 1) : 0;
  for (int ci = 0; ci < 3; ++ci) {
    const auto chrom = static_cast<Chromosome>((first + ci) % 3);
    const int n = GeneCount(a, b, chrom);
    for (int i = 0; i < n; ++i) {
      const int cut = ci == 0 ? (cut0 + i) % n : i;
      ScenarioConfig ca = a;
      ScenarioConfig cb = b;
      SwapTail(&ca, &cb, chrom, cut);
      if (IsValidConfig(ca, road) && IsValidConfig(cb, road)) {
        return {std::move(ca), std::move(cb)};
      }
    }
  }
  throw Error(ErrorCode::kCrossover, "no cut produced two valid children");
}

}  // namespace npcfuzz
