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

#include "npcfuzz/trajectory.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "npcfuzz/errors.h"

namespace npcfuzz {

namespace {

double SegmentHeading(Point a, Point b) { return std::atan2(b.d - a.d, b.s - a.s); }

// Straight run from `from` covering `length` metres, drifting linearly onto
// `lane_d` over `blend` metres. The first point is `from` itself.
std::vector<Point> StraightRun(Point from, double length, double lane_d,
                               double blend, double spacing) {
  const int n = std::max(1, static_cast<int>(std::ceil(length / spacing - 1e-9)));
  std::vector<Point> pts;
  pts.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double ds = length * i / n;
    const double w = blend > 0.0 ? std::min(1.0, ds / blend) : 1.0;
    pts.push_back({from.s + ds, from.d + (lane_d - from.d) * w});
  }
  return pts;
}

// Appends curve samples over (z0, z1], bisecting until consecutive points are
// at most `max_gap` apart.
void AppendCurve(const std::array<Point, 4>& ctrl, double z0, double z1,
                 double max_gap, int depth, std::vector<Point>* out) {
  const Point a = Bezier(ctrl, z0);
  const Point b = Bezier(ctrl, z1);
  if (Distance(a, b) > max_gap && depth < 20) {
    const double mid = 0.5 * (z0 + z1);
    AppendCurve(ctrl, z0, mid, max_gap, depth + 1, out);
    AppendCurve(ctrl, mid, z1, max_gap, depth + 1, out);
    return;
  }
  out->push_back(b);
}

using KnotFn = std::function<std::optional<double>(int, const StSample&)>;

// Integrates knot speeds (trapezoidal in time) until the path end, a
// permanent stop, or the time cap, then maps speeds onto waypoints.
SpeedProfile BuildProfile(const WaypointPath& path, double v0,
                          const KnotFn& next, const PlannerParams& params) {
  SpeedProfile out;
  out.st.push_back({0.0, 0.0, v0});
  const double length = path.length();
  const int max_k = static_cast<int>(std::lround(params.max_profile_time / kFrameDt));
  for (int k = 1; k <= max_k && out.st.back().s < length; ++k) {
    const StSample prev = out.st.back();
    const std::optional<double> v = next(k, prev);
    if (!v) break;
    const double vk = std::max(0.0, *v);
    out.st.push_back({k * kFrameDt, prev.s + 0.5 * (prev.v + vk) * kFrameDt, vk});
  }
  const StSample& last = out.st.back();
  if (last.s >= length && out.st.size() >= 2) {
    const StSample& before = out.st[out.st.size() - 2];
    const double span = last.s - before.s;
    const double frac = span > 0.0 ? (length - before.s) / span : 1.0;
    out.duration = before.t + frac * (last.t - before.t);
  } else {
    out.duration = last.t;
  }

  out.speeds.reserve(path.points().size());
  size_t j = 1;
  for (double sw : path.arc()) {
    if (sw <= 0.0) {
      out.speeds.push_back(v0);
      continue;
    }
    while (j < out.st.size() && out.st[j].s < sw) ++j;
    if (j >= out.st.size()) {
      out.speeds.push_back(last.v);
      continue;
    }
    const StSample& a = out.st[j - 1];
    const StSample& b = out.st[j];
    const double alpha = (b.v - a.v) / kFrameDt;
    const double v2 = a.v * a.v + 2.0 * alpha * (sw - a.s);
    out.speeds.push_back(std::sqrt(std::max(0.0, v2)));
  }
  return out;
}

}  // namespace

Point Bezier(const std::array<Point, 4>& c, double z) {
  const double u = 1.0 - z;
  const double b0 = u * u * u;
  const double b1 = 3.0 * u * u * z;
  const double b2 = 3.0 * u * z * z;
  const double b3 = z * z * z;
  if (z == 0.0) return c[0];
  if (z == 1.0) return c[3];
  return {b0 * c[0].s + b1 * c[1].s + b2 * c[2].s + b3 * c[3].s,
          b0 * c[0].d + b1 * c[1].d + b2 * c[2].d + b3 * c[3].d};
}

WaypointPath::WaypointPath(std::vector<Point> points, size_t phase_split)
    : points_(std::move(points)), phase_split_(phase_split) {
  arc_.reserve(points_.size());
  double acc = 0.0;
  for (size_t i = 0; i < points_.size(); ++i) {
    if (i > 0) acc += Distance(points_[i - 1], points_[i]);
    arc_.push_back(acc);
  }
}

Point WaypointPath::At(double s) const {
  if (points_.empty()) return {};
  if (points_.size() == 1) return points_.front();
  size_t i = 0;
  if (s >= arc_.back()) {
    i = points_.size() - 2;
  } else if (s > 0.0) {
    i = static_cast<size_t>(std::upper_bound(arc_.begin(), arc_.end(), s) -
                            arc_.begin()) - 1;
    i = std::min(i, points_.size() - 2);
  }
  const double seg = arc_[i + 1] - arc_[i];
  const double t = seg > 0.0 ? (s - arc_[i]) / seg : 0.0;
  return points_[i] + t * (points_[i + 1] - points_[i]);
}

double WaypointPath::Project(Point p, size_t* segment_hint) const {
  if (points_.size() < 2) return 0.0;
  const size_t last = points_.size() - 2;
  size_t start = std::min(segment_hint ? *segment_hint : 0, last);
  double best_dist = std::numeric_limits<double>::infinity();
  double best_arc = arc_[start];
  size_t best_seg = start;
  for (size_t i = start; i <= last; ++i) {
    const Point a = points_[i];
    const Point ab = points_[i + 1] - a;
    const double len2 = Dot(ab, ab);
    double t = len2 > 0.0 ? Dot(p - a, ab) / len2 : 0.0;
    if (i < last) t = std::min(t, 1.0);  // the last segment extends past the end
    t = std::max(t, 0.0);
    const Point q = a + t * ab;
    const double dist = Distance(p, q);
    if (dist < best_dist) {
      best_dist = dist;
      best_arc = arc_[i] + t * std::sqrt(len2);
      best_seg = i;
    }
  }
  if (segment_hint) *segment_hint = best_seg;
  return best_arc;
}

bool HasDirectionInversion(std::span<const Point> pts, double max_heading) {
  for (size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i].s - pts[i - 1].s > 0.0)) return true;
    if (std::abs(SegmentHeading(pts[i - 1], pts[i])) > max_heading) return true;
  }
  return false;
}

bool HasLaneDeparture(std::span<const Point> pts, double d_lo, double d_hi) {
  return std::any_of(pts.begin(), pts.end(), [&](Point p) {
    return p.d < d_lo || p.d > d_hi;
  });
}

bool HasSharpTurn(std::span<const Point> pts, double max_turn) {
  for (size_t i = 2; i < pts.size(); ++i) {
    const double h0 = SegmentHeading(pts[i - 2], pts[i - 1]);
    const double h1 = SegmentHeading(pts[i - 1], pts[i]);
    if (std::abs(NormalizeAngle(h1 - h0)) > max_turn) return true;
  }
  return false;
}

WaypointPath PlanWaypoints(const VehicleState& npc, ManeuverKind kind,
                           const RoadModel& road, Rng& rng,
                           const PlannerParams& params) {
  const Point start = npc.position;
  const int lane = road.LaneAt(start.d);
  const double lane_d = road.Centerline(lane);
  const double room = road.length() - start.s;

  if (!IsLaneChange(kind)) {
    const double length = std::min(params.straight_length, room);
    if (length < 2.0) {
      throw Error(ErrorCode::kPlanningFailure, "no room ahead for a straight path");
    }
    auto pts = StraightRun(start, length, lane_d, params.blend_length,
                           params.point_spacing);
    const size_t n = pts.size();
    return WaypointPath(std::move(pts), n);
  }

  const int target = kind == ManeuverKind::kLeftChange ? lane - 1 : lane + 1;
  if (!road.HasLane(target)) {
    throw Error(ErrorCode::kPlanningFailure, "no lane on that side");
  }
  if (room < params.phase1_min + params.advance_min) {
    throw Error(ErrorCode::kPlanningFailure, "no room ahead for a lane change");
  }
  const double target_d = road.Centerline(target);
  const double band_lo = std::min(lane, target) * road.lane_width();
  const double band_hi = (std::max(lane, target) + 1) * road.lane_width();

  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    const double s1 = rng.Uniform(params.phase1_min, params.phase1_max);
    const double advance = rng.Uniform(params.advance_min, params.advance_max);
    const double u1 = rng.Uniform();
    const double v1 = rng.Uniform(params.control_lateral_min, params.control_lateral_max);
    const double u2 = rng.Uniform();
    const double v2 = rng.Uniform(params.control_lateral_min, params.control_lateral_max);
    if (start.s + s1 + advance > road.length()) continue;

    std::vector<Point> pts = StraightRun(start, s1, lane_d,
                                         std::min(params.blend_length, s1),
                                         params.point_spacing);
    const size_t split = pts.size();
    const Point p0 = pts.back();
    const double shift = target_d - p0.d;
    const std::array<Point, 4> ctrl = {
        p0,
        Point{p0.s + u1 * advance, p0.d + v1 * shift},
        Point{p0.s + u2 * advance, p0.d + v2 * shift},
        Point{p0.s + advance, target_d}};
    const int samples = std::max(2, params.bezier_samples);
    for (int i = 1; i < samples; ++i) {
      AppendCurve(ctrl, static_cast<double>(i - 1) / (samples - 1),
                  static_cast<double>(i) / (samples - 1), params.max_point_gap, 0,
                  &pts);
    }
    if (HasDirectionInversion(pts, params.max_heading) ||
        HasLaneDeparture(pts, band_lo, band_hi) ||
        HasSharpTurn(pts, params.sharp_turn)) {
      continue;
    }
    WaypointPath path(std::move(pts), split);
    path.bezier = ctrl;
    return path;
  }
  throw Error(ErrorCode::kPlanningFailure, "every lane-change candidate was rejected");
}

double SpeedProfile::SpeedAt(const WaypointPath& path, double s) const {
  const auto& arc = path.arc();
  if (speeds.empty() || arc.empty()) return 0.0;
  if (s <= 0.0) return speeds.front();
  if (s >= arc.back()) return speeds.back();
  const size_t i = static_cast<size_t>(
      std::upper_bound(arc.begin(), arc.end(), s) - arc.begin()) - 1;
  const double seg = arc[i + 1] - arc[i];
  const double t = seg > 0.0 ? (s - arc[i]) / seg : 0.0;
  return speeds[i] + t * (speeds[i + 1] - speeds[i]);
}

std::optional<OccupiedRegion> ComputeOccupiedRegion(
    const WaypointPath& path, const VehicleState& npc, const VehicleState& ego,
    double horizon, const PlannerParams& params) {
  if (path.empty()) return std::nullopt;
  const double half_len = 0.5 * (ego.length + npc.length);
  const double half_wid = 0.5 * (ego.width + npc.width);
  const Point fwd = HeadingVector(ego.heading);
  const Point right = RightVector(ego.heading);
  const int steps = static_cast<int>(std::lround(horizon / kFrameDt));
  const int samples =
      std::max(1, static_cast<int>(std::ceil(path.length() / params.occupancy_ds)));

  std::vector<Point> stations(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    stations[i] = path.At(path.length() * i / samples);
  }

  bool any = false;
  OccupiedRegion r{std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity()};
  for (int k = 0; k <= steps; ++k) {
    const double t = k * kFrameDt;
    const Point c = ego.position + (ego.speed * t) * fwd;
    for (int i = 0; i <= samples; ++i) {
      const Point rel = stations[i] - c;
      if (std::abs(Dot(rel, fwd)) > half_len || std::abs(Dot(rel, right)) > half_wid) {
        continue;
      }
      const double s = path.length() * i / samples;
      any = true;
      r.s_begin = std::min(r.s_begin, s);
      r.s_end = std::max(r.s_end, s);
      r.t_begin = std::min(r.t_begin, t);
      r.t_end = std::max(r.t_end, t);
    }
  }
  if (!any) return std::nullopt;
  return r;
}

SpeedProfile PlanSpeed(const WaypointPath& path, const VehicleState& npc,
                       const VehicleState& ego, double horizon,
                       const PlannerParams& params,
                       const KinematicLimits& limits) {
  if (path.empty()) throw Error(ErrorCode::kPrecondition, "empty path");
  if (!(horizon > 0.0)) throw Error(ErrorCode::kPrecondition, "horizon must be positive");

  const double v0 = std::max(0.0, npc.speed);
  const double cap = std::max(params.speed_cap, v0);
  const auto region = ComputeOccupiedRegion(path, npc, ego, horizon, params);
  if (!region) {
    SpeedProfile p = BuildProfile(
        path, v0,
        [&](int, const StSample&) -> std::optional<double> {
          if (v0 == 0.0) return std::nullopt;
          return v0;
        },
        params);
    return p;
  }

  const int n = static_cast<int>(std::lround(region->t_begin / kFrameDt));
  const int nk = static_cast<int>(std::lround(region->t_end / kFrameDt));
  const double target_s = region->s_begin;
  auto envelope = [&](double lam, int k) {
    const double a = lam >= 0.0 ? limits.max_accel : limits.max_decel;
    return std::clamp(v0 + k * lam * a * kFrameDt, 0.0, cap);
  };
  auto reach = [&](double lam) {
    double s = 0.0;
    double v = v0;
    for (int k = 1; k <= n; ++k) {
      const double vk = envelope(lam, k);
      s += 0.5 * (v + vk) * kFrameDt;
      v = vk;
    }
    return s;
  };

  double lam = 0.0;
  // Already occupied at t = 0: nothing to shape, so close in at full rate.
  bool chase = n == 0 && target_s > 0.0;
  if (n > 0) {
    if (target_s < reach(-1.0)) {
      lam = -1.0;
    } else if (target_s > reach(1.0)) {
      lam = 1.0;
      chase = true;
    } else {
      double lo = -1.0;
      double hi = 1.0;
      for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (reach(mid) < target_s ? lo : hi) = mid;
      }
      lam = hi;  // reach(hi) >= target_s, so the curve does enter the region
    }
  }

  const double rise = std::min(params.recovery_accel, limits.max_accel) * kFrameDt;
  const double fall = std::min(params.recovery_accel, limits.max_decel) * kFrameDt;
  SpeedProfile p = BuildProfile(
      path, v0,
      [&](int k, const StSample& prev) -> std::optional<double> {
        if (k <= n) return envelope(lam, k);
        if (chase && prev.s < target_s && k <= nk) {
          return std::min(cap, prev.v + limits.max_accel * kFrameDt);
        }
        if (k <= nk) return prev.v;
        if (prev.v == 0.0 && v0 == 0.0) return std::nullopt;
        if (prev.v < v0) return std::min(v0, prev.v + rise);
        return std::max(v0, prev.v - fall);
      },
      params);
  p.region = region;
  return p;
}

SpeedProfile RampProfile(const WaypointPath& path, double v0, double target,
                         double rate, const PlannerParams& params,
                         const KinematicLimits& limits) {
  if (path.empty()) throw Error(ErrorCode::kPrecondition, "empty path");
  if (v0 < 0.0 || target < 0.0) {
    throw Error(ErrorCode::kPrecondition, "speeds must be non-negative");
  }
  const double up = std::min(rate, limits.max_accel) * kFrameDt;
  const double down = std::min(rate, limits.max_decel) * kFrameDt;
  return BuildProfile(
      path, v0,
      [&](int, const StSample& prev) -> std::optional<double> {
        if (prev.v == 0.0 && target == 0.0) return std::nullopt;
        if (prev.v < target) return std::min(target, prev.v + up);
        return std::max(target, prev.v - down);
      },
      params);
}

double MaxImpliedAccel(const WaypointPath& path, const SpeedProfile& profile) {
  double best = -std::numeric_limits<double>::infinity();
  const auto& arc = path.arc();
  for (size_t i = 1; i < arc.size() && i < profile.speeds.size(); ++i) {
    const double ds = arc[i] - arc[i - 1];
    if (ds <= 0.0) continue;
    const double v1 = profile.speeds[i - 1];
    const double v2 = profile.speeds[i];
    best = std::max(best, (v2 * v2 - v1 * v1) / (2.0 * ds));
  }
  return best;
}

double MaxImpliedDecel(const WaypointPath& path, const SpeedProfile& profile) {
  double best = -std::numeric_limits<double>::infinity();
  const auto& arc = path.arc();
  for (size_t i = 1; i < arc.size() && i < profile.speeds.size(); ++i) {
    const double ds = arc[i] - arc[i - 1];
    if (ds <= 0.0) continue;
    const double v1 = profile.speeds[i - 1];
    const double v2 = profile.speeds[i];
    best = std::max(best, (v1 * v1 - v2 * v2) / (2.0 * ds));
  }
  return best;
}

}  // namespace npcfuzz
