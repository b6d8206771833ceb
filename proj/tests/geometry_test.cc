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
#include <numbers>
#include <vector>

#include "doctest.h"
#include "npcfuzz/errors.h"
#include "npcfuzz/geometry.h"
#include "npcfuzz/kinematics.h"
#include "npcfuzz/rng.h"
#include "npcfuzz/road_model.h"

namespace npcfuzz {
namespace {

// Dense perimeter samples; the pairwise minimum bounds the true distance
// from above by at most the sample spacing.
std::vector<Point> Perimeter(const OrientedBox& b, int per_edge) {
  const auto c = b.Corners();
  std::vector<Point> out;
  for (int e = 0; e < 4; ++e) {
    for (int i = 0; i < per_edge; ++i) {
      const double t = static_cast<double>(i) / per_edge;
      out.push_back(c[e] + t * (c[(e + 1) % 4] - c[e]));
    }
  }
  return out;
}

bool InsideBox(const OrientedBox& b, Point p) {
  const Point rel = p - b.center;
  return std::abs(Dot(rel, HeadingVector(b.heading))) <= 0.5 * b.length &&
         std::abs(Dot(rel, RightVector(b.heading))) <= 0.5 * b.width;
}

TEST_CASE("box corners are ordered front-left, front-right, rear-right, rear-left") {
  const OrientedBox b{{10.0, 2.0}, 0.0, 4.0, 2.0};
  const auto c = b.Corners();
  CHECK(c[0] == Point{12.0, 1.0});
  CHECK(c[1] == Point{12.0, 3.0});
  CHECK(c[2] == Point{8.0, 3.0});
  CHECK(c[3] == Point{8.0, 1.0});
}

TEST_CASE("box distance examples") {
  const OrientedBox a{{0.0, 0.0}, 0.0, 4.0, 2.0};
  CHECK(BoxDistance(a, a) == 0.0);
  const OrientedBox b{{10.0, 0.0}, 0.0, 4.0, 2.0};
  CHECK(BoxDistance(a, b) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK_FALSE(BoxesCollide(a, b));

  // Edge contact counts as a collision.
  const OrientedBox touching{{4.0, 0.0}, 0.0, 4.0, 2.0};
  CHECK(BoxDistance(a, touching) == 0.0);
  CHECK(BoxesCollide(a, touching));

  // Two unit squares rotated 45 degrees meeting corner to corner.
  const double q = std::numbers::pi / 4.0;
  const double half_diag = std::sqrt(2.0) / 2.0;
  const OrientedBox r1{{0.0, 0.0}, q, 1.0, 1.0};
  const OrientedBox r2{{2.0 * half_diag, 0.0}, q, 1.0, 1.0};
  CHECK(BoxDistance(r1, r2) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("box distance agrees with a perimeter-sampling oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const OrientedBox a{{rng.Uniform(-5, 5), rng.Uniform(-5, 5)}, rng.Uniform(-3, 3),
                        rng.Uniform(1, 6), rng.Uniform(1, 3)};
    const OrientedBox b{{rng.Uniform(-5, 5), rng.Uniform(-5, 5)}, rng.Uniform(-3, 3),
                        rng.Uniform(1, 6), rng.Uniform(1, 3)};
    const auto pa = Perimeter(a, 400);
    const auto pb = Perimeter(b, 400);
    bool overlap = false;
    for (const Point& p : pa) overlap = overlap || InsideBox(b, p);
    for (const Point& p : pb) overlap = overlap || InsideBox(a, p);
    const double got = BoxDistance(a, b);
    if (overlap) {
      CHECK(got == 0.0);
      CHECK(BoxesCollide(a, b));
      continue;
    }
    double best = 1e300;
    for (const Point& p : pa) {
      for (const Point& q : pb) best = std::min(best, Distance(p, q));
    }
    CHECK(got <= best + 1e-9);
    CHECK(got >= best - 0.02);
  }
}

TEST_CASE("point-segment distance") {
  CHECK(PointSegmentDistance({0, 1}, {-1, 0}, {1, 0}) == 1.0);
  CHECK(PointSegmentDistance({3, 0}, {-1, 0}, {1, 0}) == 2.0);
  CHECK(PointSegmentDistance({4, 4}, {1, 1}, {1, 1}) == doctest::Approx(std::sqrt(18.0)));
}

TEST_CASE("normalize angle wraps to (-pi, pi]") {
  CHECK(NormalizeAngle(std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(NormalizeAngle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(NormalizeAngle(3 * std::numbers::pi / 2) == doctest::Approx(-std::numbers::pi / 2));
}

TEST_CASE("road construction") {
  const RoadModel r = BuildRoad(2, 3.5, 500, 50, 300);
  CHECK(r.Centerline(0) == 1.75);
  CHECK(r.Centerline(1) == 5.25);
  CHECK(r.bubble_end() == 350.0);

  const RoadModel single = BuildRoad(1, 3.5, 400, 50, 300);
  CHECK(single.width() == 3.5);
  CHECK(single.illegal_lines().size() == 2);
  CHECK(single.illegal_lines()[0].offset == 0.0);
  CHECK(single.illegal_lines()[1].offset == 3.5);

  const RoadModel hw = BuildRoad(*RoadPreset("highway4"));
  CHECK(hw.lane_count() == 4);
  CHECK(hw.length() == 600.0);

  const RoadModel urban = BuildRoad(*RoadPreset("urban2"));
  bool yellow = false;
  for (const LineSpec& l : urban.illegal_lines()) {
    yellow = yellow || (l.kind == LineKind::kYellow && l.offset == 0.0);
  }
  CHECK(yellow);
  CHECK_FALSE(RoadPreset("dirt-track"));
}

TEST_CASE("road construction rejects bad geometry") {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kUsage;
  };
  CHECK(code([] { BuildRoad(0, 3.5, 500, 50, 300); }) == ErrorCode::kInvalidGeometry);
  CHECK(code([] { BuildRoad(2, -1, 500, 50, 300); }) == ErrorCode::kInvalidGeometry);
  CHECK(code([] { BuildRoad(2, 3.5, 300, 50, 300); }) == ErrorCode::kInvalidGeometry);
}

TEST_CASE("lane of box") {
  const RoadModel r = BuildRoad(2, 3.5, 500, 50, 300);
  CHECK(LaneOfBox(r, {{100, 1.75}, 0, 4.5, 2.0}) == LaneAssignment::Lane(0));
  CHECK(LaneOfBox(r, {{100, 3.5}, 0, 4.5, 2.0}).straddling());
  // Corners at d = 5.0 and 5.4.
  CHECK(LaneOfBox(r, {{100, 5.2}, 0, 4.5, 0.4}) == LaneAssignment::Lane(1));
  CHECK_THROWS_AS(LaneOfBox(r, {{100, -3}, 0, 4.5, 2.0}), Error);
}

TEST_CASE("distance to illegal lines") {
  const RoadModel r = BuildRoad(*RoadPreset("urban2"));
  CHECK(DistanceToIllegalLines(r, {{100, 1.75}, 0, 4.5, 2.0}) == doctest::Approx(0.75));
  CHECK(DistanceToIllegalLines(r, {{100, 0.0}, 0, 4.5, 2.0}) == 0.0);
  CHECK(DistanceToIllegalLines(r, {{100, 0.5}, 0, 4.5, 2.0}) == 0.0);
}

TEST_CASE("vehicle step examples") {
  VehicleState v;
  v.position = {0.0, 1.75};
  v.speed = 10.0;
  const VehicleState straight = StepVehicle(v, {50.0, 1.75}, 10.0, 0.1);
  CHECK(straight.position.s == doctest::Approx(1.0));
  CHECK(straight.position.d == doctest::Approx(1.75));
  CHECK(straight.speed == 10.0);

  CHECK(StepVehicle(v, {50.0, 1.75}, 0.0, 0.1).speed == doctest::Approx(9.2));
  CHECK(StepVehicle(v, {50.0, 1.75}, 20.0, 0.1).speed == doctest::Approx(10.4));
}

TEST_CASE("vehicle step limits heading and yaw rate") {
  VehicleState v;
  v.position = {0.0, 1.75};
  v.speed = 5.0;
  // A target far to the side: the yaw rate caps the turn at 0.05 rad.
  const VehicleState turned = StepVehicle(v, {0.5, 30.0}, 5.0, 0.1);
  CHECK(turned.heading == doctest::Approx(0.05));
  VehicleState w = v;
  for (int i = 0; i < 100; ++i) w = StepVehicle(w, {w.position.s + 0.1, 100.0}, 5.0, 0.1);
  CHECK(w.heading <= std::numbers::pi / 3.0 + 1e-12);
}

TEST_CASE("vehicle step input validation") {
  VehicleState v;
  v.speed = 1.0;
  CHECK_THROWS_AS(StepVehicle(v, {NAN, 0.0}, 1.0, 0.1), Error);
  CHECK_THROWS_AS(StepVehicle(v, {1.0, 0.0}, -1.0, 0.1), Error);
  CHECK_THROWS_AS(StepVehicle(v, {1.0, 0.0}, 1.0, 0.0), Error);
}

}  // namespace
}  // namespace npcfuzz
