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

#include "npcfuzz/geometry.h"

#include <algorithm>
#include <limits>
#include <numbers>
#include <vector>

namespace npcfuzz {

double NormalizeAngle(double angle) {
  constexpr double kPi = std::numbers::pi;
  angle = std::fmod(angle + kPi, 2.0 * kPi);
  if (angle <= 0.0) angle += 2.0 * kPi;
  return angle - kPi;
}

std::array<Point, 4> OrientedBox::Corners() const {
  const Point f = (0.5 * length) * HeadingVector(heading);
  const Point r = (0.5 * width) * RightVector(heading);
  return {center + f - r, center + f + r, center - f + r, center - f - r};
}

double PointSegmentDistance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = Dot(ab, ab);
  if (len2 == 0.0) return Distance(p, a);
  const double t = std::clamp(Dot(p - a, ab) / len2, 0.0, 1.0);
  return Distance(p, a + t * ab);
}

namespace {

void AppendAxes(std::span<const Point> poly, std::vector<Point>* axes) {
  const size_t n = poly.size();
  const size_t edges = n == 2 ? 1 : n;
  for (size_t i = 0; i < edges; ++i) {
    const Point e = poly[(i + 1) % n] - poly[i];
    const double len = Norm(e);
    if (len == 0.0) continue;
    axes->push_back({-e.d / len, e.s / len});
    // A segment also needs its own direction as a candidate axis.
    if (n == 2) axes->push_back({e.s / len, e.d / len});
  }
}

std::pair<double, double> Project(std::span<const Point> poly, Point axis) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Point& p : poly) {
    const double v = Dot(p, axis);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

double VertexEdgeDistance(std::span<const Point> verts,
                          std::span<const Point> poly) {
  const size_t n = poly.size();
  const size_t edges = n == 2 ? 1 : n;
  double best = std::numeric_limits<double>::infinity();
  for (const Point& v : verts) {
    for (size_t i = 0; i < edges; ++i) {
      best = std::min(best, PointSegmentDistance(v, poly[i], poly[(i + 1) % n]));
    }
  }
  return best;
}

}  // namespace

bool ConvexOverlap(std::span<const Point> a, std::span<const Point> b) {
  std::vector<Point> axes;
  AppendAxes(a, &axes);
  AppendAxes(b, &axes);
  for (const Point& axis : axes) {
    const auto [alo, ahi] = Project(a, axis);
    const auto [blo, bhi] = Project(b, axis);
    if (ahi + kContactTolerance < blo || bhi + kContactTolerance < alo) {
      return false;
    }
  }
  return true;
}

double ConvexDistance(std::span<const Point> a, std::span<const Point> b) {
  if (ConvexOverlap(a, b)) return 0.0;
  return std::min(VertexEdgeDistance(a, b), VertexEdgeDistance(b, a));
}

double BoxDistance(const OrientedBox& a, const OrientedBox& b) {
  const auto ca = a.Corners();
  const auto cb = b.Corners();
  return ConvexDistance(ca, cb);
}

bool BoxesCollide(const OrientedBox& a, const OrientedBox& b) {
  const auto ca = a.Corners();
  const auto cb = b.Corners();
  return ConvexOverlap(ca, cb);
}

double BoxSegmentDistance(const OrientedBox& box, Point a, Point b) {
  const auto corners = box.Corners();
  const std::array<Point, 2> segment{a, b};
  return ConvexDistance(corners, segment);
}

}  // namespace npcfuzz
