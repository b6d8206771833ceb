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

#include <array>
#include <cmath>
#include <span>

namespace npcfuzz {

/// Road-frame coordinates: s along the road axis, d lateral from the left
/// road edge (d grows to the right).
struct Point {
  double s = 0.0;
  double d = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.s + b.s, a.d + b.d}; }
inline Point operator-(Point a, Point b) { return {a.s - b.s, a.d - b.d}; }
inline Point operator*(double k, Point a) { return {k * a.s, k * a.d}; }
inline double Dot(Point a, Point b) { return a.s * b.s + a.d * b.d; }
inline double Cross(Point a, Point b) { return a.s * b.d - a.d * b.s; }
inline double Norm(Point a) { return std::hypot(a.s, a.d); }
inline double Distance(Point a, Point b) { return Norm(a - b); }
inline bool IsFinite(Point p) { return std::isfinite(p.s) && std::isfinite(p.d); }

/// Unit vector along `heading` (0 = +s).
inline Point HeadingVector(double heading) {
  return {std::cos(heading), std::sin(heading)};
}
/// Unit vector pointing to the right of `heading`; +d for heading 0.
inline Point RightVector(double heading) {
  return {-std::sin(heading), std::cos(heading)};
}

/// Wraps an angle to (-pi, pi].
double NormalizeAngle(double angle);

struct OrientedBox {
  Point center;
  double heading = 0.0;
  double length = 0.0;
  double width = 0.0;

  /// Corners in cyclic order: front-left, front-right, rear-right, rear-left.
  std::array<Point, 4> Corners() const;
};

/// Gaps at or below this count as contact.
inline constexpr double kContactTolerance = 1e-9;

double PointSegmentDistance(Point p, Point a, Point b);

/// True when the convex polygons overlap or touch (separating-axis test).
bool ConvexOverlap(std::span<const Point> a, std::span<const Point> b);

/// Minimum distance between two convex polygons; 0 on overlap or contact.
/// A polygon may be degenerate (two points = a segment).
double ConvexDistance(std::span<const Point> a, std::span<const Point> b);

double BoxDistance(const OrientedBox& a, const OrientedBox& b);
bool BoxesCollide(const OrientedBox& a, const OrientedBox& b);
double BoxSegmentDistance(const OrientedBox& box, Point a, Point b);

}  // namespace npcfuzz
