#!/usr/bin/env python3
# Copyright 2026 The npcfuzz Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the hand-labelled liability fixtures to fixtures/liability/.

Each fixture is a two-vehicle record on the urban2 road whose last frame
precedes an EGO-NPC contact. Traces are closed-form: constant acceleration
along s and a cosine lateral blend for lane changes. The `label` block holds
the verdict a human reviewer assigns to the clip, written without running
the determiner.
"""

import json
import math
import pathlib
import sys

DT = 0.1
LANE_W = 3.5
EGO = (4.7, 2.0)
NPC = (4.5, 1.9)
FRAMES = 40


def centre(lane):
    return (lane + 0.5) * LANE_W


def longitudinal(s0, v0, a, k, v_floor=0.0):
    """Position and speed after k steps of constant acceleration."""
    t = k * DT
    if a < 0 and v0 + a * t < v_floor:
        t_stop = (v_floor - v0) / a
        s = s0 + v0 * t_stop + 0.5 * a * t_stop ** 2 + v_floor * (t - t_stop)
        return s, v_floor
    return s0 + v0 * t + 0.5 * a * t * t, v0 + a * t


def lateral(d0, d1, k, k0, k1):
    """Cosine blend from d0 to d1 between frames k0 and k1; returns (d, dd/dk)."""
    if k <= k0:
        return d0, 0.0
    if k >= k1:
        return d1, 0.0
    u = (k - k0) / (k1 - k0)
    d = d0 + (d1 - d0) * 0.5 * (1 - math.cos(math.pi * u))
    dd = (d1 - d0) * 0.5 * math.pi * math.sin(math.pi * u) / (k1 - k0)
    return d, dd


class Track:
    def __init__(self, s0, v0, a=0.0, d0=0.0, d1=None, k0=0, k1=1):
        self.s0, self.v0, self.a = s0, v0, a
        self.d0 = d0
        self.d1 = d0 if d1 is None else d1
        self.k0, self.k1 = k0, k1

    def state(self, k):
        s, v = longitudinal(self.s0, self.v0, self.a, k)
        d, dd = lateral(self.d0, self.d1, k, self.k0, self.k1)
        ds = max(v * DT, 1e-3)
        heading = math.atan2(dd, ds) if dd else 0.0
        return [s, d, heading, v]


def corners(st, dims):
    s, d, h, _ = st
    L, W = dims
    f = (math.cos(h), math.sin(h))
    r = (-math.sin(h), math.cos(h))
    out = []
    for a, b in ((1, -1), (1, 1), (-1, 1), (-1, -1)):
        out.append((s + a * L / 2 * f[0] + b * W / 2 * r[0],
                    d + a * L / 2 * f[1] + b * W / 2 * r[1]))
    return out


def overlap(a, b):
    for poly in (a, b):
        for i in range(4):
            p, q = poly[i], poly[(i + 1) % 4]
            ax = (-(q[1] - p[1]), q[0] - p[0])
            pa = [ax[0] * x + ax[1] * y for x, y in a]
            pb = [ax[0] * x + ax[1] * y for x, y in b]
            if max(pa) < min(pb) or max(pb) < min(pa):
                return False
    return True


def build(name, ego, npc, maneuvers, verdict, description):
    """Runs both tracks until the first overlapping frame."""
    frames = []
    contact = None
    for k in range(400):
        e, n = ego.state(k), npc.state(k)
        if overlap(corners(e, EGO), corners(n, NPC)):
            contact = (k, e, n)
            break
        frames.append({"k": k, "states": [e, n], "maneuvers": [list(maneuvers(k))]})
    if contact is None or not frames:
        sys.exit(f"{name}: tracks never touch (or touch at frame 0)")
    frames = frames[-FRAMES:]
    k, e, n = contact
    last_manoeuvre = frames[-1]["maneuvers"][0]
    first = frames[0]["states"]
    record = {
        "schema": 1,
        "seed": 0,
        "generation": 0,
        "index": 0,
        "road": {"lanes": 2, "lane_width_m": LANE_W, "length_m": 500.0,
                 "bubble_offset_m": 50.0, "bubble_length_m": 300.0,
                 "yellow_line": True},
        "params": {"ell": 20.0, "ego": "fixture"},
        "config": {
            "ego": {"start": [first[0][0], first[0][1]],
                    "destination": [380.0, first[0][1]]},
            "npcs": [[first[1][0], first[1][1]]],
            "weather": {"rain": 0.0, "fog": 0.0, "wetness": 0.0,
                        "cloudness": 0.0, "time": 12},
            "max_frames": 500,
        },
        "vehicles": [
            {"id": 0, "kind": "ego", "length": EGO[0], "width": EGO[1]},
            {"id": 1, "kind": "npc", "length": NPC[0], "width": NPC[1]},
        ],
        "frames": frames,
        "collision": {"frame": k, "npc_id": 1, "states": [e, n]},
        "violations": [{
            "kind": "Collision", "frame": k, "participants": [0, 1],
            "positions": [[e[0], e[1]], [n[0], n[1]]],
            "npc_maneuver": last_manoeuvre, "line": None,
        }],
        "outcome": "CollisionStopped",
        "fitness": None,
        "liability": [],
        "label": {"verdict": verdict, "description": description},
    }
    return record


def constant(kind, status="RUNNING"):
    return lambda k: (kind, status)


def switch_at(k_switch, before, after):
    return lambda k: before if k < k_switch else after


def cases():
    L0, L1 = centre(0), centre(1)
    yield build("rear_end_by_npc_keep", Track(150, 8, d0=L0), Track(120, 14, d0=L0),
                constant("KEEP_SPEED"), "NPC_Fault",
                "NPC closes on a slower EGO in lane 0 and hits its rear.")
    yield build("rear_end_by_npc_ego_braking", Track(160, 10, -2.0, d0=L1),
                Track(135, 11, 0.5, d0=L1), constant("ACCELERATION_STRAIGHT"),
                "NPC_Fault", "EGO brakes moderately; the accelerating NPC behind runs into it.")
    yield build("rear_end_by_npc_ego_stopped", Track(200, 0, d0=L1), Track(160, 12, d0=L1),
                constant("KEEP_SPEED"), "NPC_Fault",
                "EGO stands at its destination; the NPC keeps speed into its back.")
    yield build("rear_end_by_npc_while_decelerating", Track(150, 6, d0=L0),
                Track(125, 13, -0.8, d0=L0), constant("DECELERATION_STRAIGHT"),
                "NPC_Fault", "NPC decelerates too late behind the EGO and still hits it.")
    yield build("npc_left_cut_in_ahead", Track(150, 12, d0=L0),
                Track(158, 9, d0=L1, d1=L0, k0=0, k1=30), constant("LEFT_CHANGE"),
                "NPC_Fault", "NPC cuts into the EGO lane from the right just ahead of it.")
    yield build("npc_left_sideswipe", Track(150, 10, d0=L0),
                Track(150.5, 10, d0=L1, d1=L0, k0=0, k1=25), constant("LEFT_CHANGE"),
                "NPC_Fault", "NPC alongside the EGO swerves left into its flank.")
    yield build("npc_left_change_behind", Track(152, 9, d0=L0),
                Track(146, 10.5, d0=L1, d1=L0, k0=0, k1=30), constant("LEFT_CHANGE"),
                "NPC_Fault", "NPC merges left while slightly behind and clips the EGO rear corner.")
    yield build("npc_right_cut_in_ahead", Track(150, 12, d0=L1),
                Track(158, 9, d0=L0, d1=L1, k0=0, k1=30), constant("RIGHT_CHANGE"),
                "NPC_Fault", "NPC cuts into the EGO lane from the left just ahead of it.")
    yield build("npc_right_sideswipe", Track(150, 10, d0=L1),
                Track(150.5, 10, d0=L0, d1=L1, k0=0, k1=25), constant("RIGHT_CHANGE"),
                "NPC_Fault", "NPC alongside the EGO swerves right into its flank.")
    yield build("npc_right_change_behind", Track(152, 9, d0=L1),
                Track(146, 10.5, d0=L0, d1=L1, k0=0, k1=30), constant("RIGHT_CHANGE"),
                "NPC_Fault", "NPC merges right while slightly behind and clips the EGO.")
    yield build("ego_rear_ends_slow_npc", Track(120, 14, d0=L1), Track(150, 5, d0=L1),
                constant("KEEP_SPEED"), "EGO_Fault",
                "EGO approaches a slow NPC in its lane and fails to brake.")
    yield build("ego_rear_ends_decelerating_npc", Track(130, 12, -1.0, d0=L0),
                Track(150, 12, -4.0, d0=L0), constant("DECELERATION_STRAIGHT"),
                "EGO_Fault", "NPC ahead brakes; the EGO follows too closely and hits it.")
    yield build("ego_rear_ends_stopped_npc", Track(110, 13, d0=L1), Track(150, 0, d0=L1),
                constant("KEEP_SPEED", "IDLE"), "EGO_Fault",
                "EGO drives into a stationary NPC in its lane.")
    yield build("ego_rear_ends_accelerating_npc", Track(125, 15, d0=L0),
                Track(150, 6, 1.0, d0=L0), constant("ACCELERATION_STRAIGHT"),
                "EGO_Fault", "NPC ahead is still slower than the EGO, which does not slow down.")
    yield build("ego_left_change_into_npc", Track(150, 10, d0=L1, d1=L0, k0=5, k1=35),
                Track(151, 10, d0=L0), constant("KEEP_SPEED"), "EGO_Fault",
                "EGO changes left into an NPC holding its lane alongside.")
    yield build("ego_right_change_into_npc", Track(148, 11, d0=L0, d1=L1, k0=5, k1=35),
                Track(151, 10, d0=L1), constant("KEEP_SPEED"), "EGO_Fault",
                "EGO changes right into an NPC holding its lane.")
    yield build("ego_completes_change_then_rear_ends", Track(120, 14, d0=L0, d1=L1, k0=0, k1=20),
                Track(150, 7, d0=L1), constant("KEEP_SPEED"), "EGO_Fault",
                "EGO finishes a right lane change and runs into the slower NPC ahead.")
    yield build("both_changing_npc_enters_ego_lane", Track(150, 10, d0=L0, d1=L1, k0=20, k1=60),
                Track(156, 9, d0=L1, d1=L0, k0=5, k1=40), constant("LEFT_CHANGE"),
                "NPC_Fault",
                "Both start lane changes; the NPC commits first and swings into the EGO's lane.")
    # Reviewer and rules are expected to disagree on the next two.
    yield build("straddling_ego_rear_ended", Track(150, 7, d0=L0, d1=L1, k0=10, k1=70),
                Track(125, 13, d0=L0), constant("KEEP_SPEED"), "NPC_Fault",
                "EGO has just begun a lane change and is rear-ended by a fast NPC from behind.")
    yield build("npc_cut_in_then_brake", Track(130, 12, d0=L0),
                Track(146, 12, -6.0,
                      d0=L1, d1=L0, k0=0, k1=12),
                switch_at(13, ("LEFT_CHANGE", "RUNNING"), ("DECELERATION_STRAIGHT", "RUNNING")),
                "NPC_Fault",
                "NPC cuts in close ahead of the EGO and brakes hard right after merging.")


def main():
    root = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "liability"
    root.mkdir(parents=True, exist_ok=True)
    for old in root.glob("*.json"):
        old.unlink()
    for i, rec in enumerate(cases()):
        path = root / f"case_{i:02d}.json"
        path.write_text(json.dumps(rec, indent=1) + "\n")
    print(f"wrote {i + 1} fixtures to {root}")


if __name__ == "__main__":
    main()
