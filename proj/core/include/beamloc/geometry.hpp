// SPDX-License-Identifier: Apache-2.0
//
// beamloc: beam-RSRP fingerprint positioning toolkit
// Copyright (C) 2026 The beamloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef BEAMLOC_GEOMETRY_HPP
#define BEAMLOC_GEOMETRY_HPP

#include <optional>

namespace beamloc
{

struct Point2
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2 &, const Point2 &) = default;
};

/// Axis-aligned rectangle. Containment tests distinguish the closed set from
/// its open interior: UE lattice points on a wall are excluded, but a ray that
/// only grazes a wall or corner is not blocked.
struct Rect
{
    Point2 min;
    Point2 max;

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    bool valid() const { return min.x < max.x && min.y < max.y; }

    bool contains_closed(const Point2 &p) const
    {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
    bool contains_open(const Point2 &p) const
    {
        return p.x > min.x && p.x < max.x && p.y > min.y && p.y < max.y;
    }

    friend bool operator==(const Rect &, const Rect &) = default;
};

/// True when the open interiors of a and b share at least one point.
bool interiors_overlap(const Rect &a, const Rect &b);

/// Parameter interval (t_enter, t_exit) ⊂ [0, 1] of the segment a→b that lies
/// inside the open interior of `rect`, or nullopt when the segment misses the
/// interior (touching an edge or a corner counts as a miss).
struct SegmentCrossing
{
    double t_enter;
    double t_exit;
};
std::optional<SegmentCrossing> segment_interior_crossing(const Point2 &a, const Point2 &b, const Rect &rect);

inline bool segment_crosses_interior(const Point2 &a, const Point2 &b, const Rect &rect)
{
    return segment_interior_crossing(a, b, rect).has_value();
}

double distance(const Point2 &a, const Point2 &b);

/// Wraps an angle in degrees to (-180, 180].
double wrap_degrees(double deg);

} // namespace beamloc

#endif // BEAMLOC_GEOMETRY_HPP
