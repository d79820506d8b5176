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

#include "beamloc/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace beamloc
{

bool interiors_overlap(const Rect &a, const Rect &b)
{
    return a.min.x < b.max.x && b.min.x < a.max.x && a.min.y < b.max.y && b.min.y < a.max.y;
}

namespace
{

// Narrows [lo, hi] to the parameters where lo_bound < origin + t*dir < hi_bound.
// Returns false if the open slab is never entered.
bool clip_open_slab(double origin, double dir, double lo_bound, double hi_bound, double &lo, double &hi)
{
    if (dir == 0.0)
    {
        return origin > lo_bound && origin < hi_bound;
    }
    double t_a = (lo_bound - origin) / dir;
    double t_b = (hi_bound - origin) / dir;
    if (t_a > t_b)
    {
        std::swap(t_a, t_b);
    }
    lo = std::max(lo, t_a);
    hi = std::min(hi, t_b);
    return true;
}

} // namespace

std::optional<SegmentCrossing> segment_interior_crossing(const Point2 &a, const Point2 &b, const Rect &rect)
{
    // Open slabs intersected with the closed parameter range [0, 1]; the result
    // has interior points iff the lower bound is strictly below the upper bound.
    double lo = 0.0;
    double hi = 1.0;
    if (!clip_open_slab(a.x, b.x - a.x, rect.min.x, rect.max.x, lo, hi))
    {
        return std::nullopt;
    }
    if (!clip_open_slab(a.y, b.y - a.y, rect.min.y, rect.max.y, lo, hi))
    {
        return std::nullopt;
    }
    if (!(lo < hi))
    {
        return std::nullopt;
    }
    return SegmentCrossing{lo, hi};
}

double distance(const Point2 &a, const Point2 &b)
{
    return std::hypot(b.x - a.x, b.y - a.y);
}

double wrap_degrees(double deg)
{
    double r = std::fmod(deg, 360.0);
    if (r <= -180.0)
    {
        r += 360.0;
    }
    else if (r > 180.0)
    {
        r -= 360.0;
    }
    return r;
}

} // namespace beamloc
