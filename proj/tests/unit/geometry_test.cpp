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
#include "beamloc/random.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace beamloc
{
namespace
{

const Rect kBox{{0.0, 0.0}, {10.0, 10.0}};

TEST(SegmentCrossing, ThroughTheMiddleBlocks)
{
    auto c = segment_interior_crossing({-5.0, 5.0}, {15.0, 5.0}, kBox);
    ASSERT_TRUE(c.has_value());
    EXPECT_DOUBLE_EQ(c->t_enter, 0.25);
    EXPECT_DOUBLE_EQ(c->t_exit, 0.75);
}

TEST(SegmentCrossing, GrazingAnEdgeDoesNotBlock)
{
    EXPECT_FALSE(segment_crosses_interior({-5.0, 10.0}, {15.0, 10.0}, kBox));
    EXPECT_FALSE(segment_crosses_interior({0.0, -3.0}, {0.0, 13.0}, kBox));
}

TEST(SegmentCrossing, TouchingACornerDoesNotBlock)
{
    EXPECT_FALSE(segment_crosses_interior({-5.0, 5.0}, {5.0, -5.0}, kBox));
    EXPECT_FALSE(segment_crosses_interior({10.0, 10.0}, {20.0, 20.0}, kBox));
}

TEST(SegmentCrossing, EndpointOnTheWallFromOutsideDoesNotBlock)
{
    EXPECT_FALSE(segment_crosses_interior({-5.0, 5.0}, {0.0, 5.0}, kBox));
}

TEST(SegmentCrossing, SegmentInsideBlocks)
{
    EXPECT_TRUE(segment_crosses_interior({2.0, 2.0}, {3.0, 3.0}, kBox));
}

TEST(SegmentCrossing, DegenerateSegment)
{
    EXPECT_TRUE(segment_crosses_interior({5.0, 5.0}, {5.0, 5.0}, kBox));
    EXPECT_FALSE(segment_crosses_interior({10.0, 5.0}, {10.0, 5.0}, kBox));
    EXPECT_FALSE(segment_crosses_interior({11.0, 5.0}, {11.0, 5.0}, kBox));
}

TEST(SegmentCrossing, DiagonalThroughCornersBlocks)
{
    EXPECT_TRUE(segment_crosses_interior({-1.0, -1.0}, {11.0, 11.0}, kBox));
}

TEST(SegmentCrossing, AgreesWithDenseSamplingOnLatticeSegments)
{
    Rng rng(41);
    for (int i = 0; i < 2000; ++i)
    {
        const Rect r{{2.0, 3.0}, {7.0, 6.0}};
        const Point2 a{static_cast<double>(rng.below(11)), static_cast<double>(rng.below(11))};
        const Point2 b{static_cast<double>(rng.below(11)), static_cast<double>(rng.below(11))};
        ASSERT_EQ(segment_crosses_interior(a, b, r), testing::dense_sampling_blocked(a, b, r))
            << "(" << a.x << "," << a.y << ")-(" << b.x << "," << b.y << ")";
    }
}

TEST(SegmentCrossing, SymmetricInDirection)
{
    Rng rng(5);
    for (int i = 0; i < 500; ++i)
    {
        const Point2 a{rng.uniform(-5, 15), rng.uniform(-5, 15)};
        const Point2 b{rng.uniform(-5, 15), rng.uniform(-5, 15)};
        EXPECT_EQ(segment_crosses_interior(a, b, kBox), segment_crosses_interior(b, a, kBox));
    }
}

TEST(Rect, ClosedVersusOpen)
{
    EXPECT_TRUE(kBox.contains_closed({0.0, 5.0}));
    EXPECT_FALSE(kBox.contains_open({0.0, 5.0}));
    EXPECT_TRUE(kBox.contains_open({0.5, 5.0}));
}

TEST(Rect, InteriorsOverlap)
{
    EXPECT_TRUE(interiors_overlap(kBox, Rect{{5.0, 5.0}, {15.0, 15.0}}));
    EXPECT_FALSE(interiors_overlap(kBox, Rect{{10.0, 0.0}, {20.0, 10.0}}));
    EXPECT_FALSE(interiors_overlap(kBox, Rect{{10.0, 10.0}, {20.0, 20.0}}));
}

TEST(WrapDegrees, Range)
{
    EXPECT_DOUBLE_EQ(wrap_degrees(180.0), 180.0);
    EXPECT_DOUBLE_EQ(wrap_degrees(-180.0), 180.0);
    EXPECT_DOUBLE_EQ(wrap_degrees(270.0), -90.0);
    EXPECT_DOUBLE_EQ(wrap_degrees(-450.0), -90.0);
    EXPECT_DOUBLE_EQ(wrap_degrees(0.0), 0.0);
}

TEST(Random, DeriveSeedSeparatesStreamsAndIndices)
{
    EXPECT_NE(derive_seed(1, SeedStream::split), derive_seed(1, SeedStream::init));
    EXPECT_NE(derive_seed(1, SeedStream::split, 0), derive_seed(1, SeedStream::split, 1));
    EXPECT_EQ(derive_seed(9, SeedStream::shuffle, 3), derive_seed(9, SeedStream::shuffle, 3));
}

TEST(Random, SplitmixReferenceValue)
{
    // first output of the reference splitmix64 generator seeded with 0
    EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(Random, BelowStaysInRange)
{
    Rng rng(3);
    for (int i = 0; i < 1000; ++i)
    {
        EXPECT_LT(rng.below(7), 7u);
    }
}

TEST(Random, NormalMoments)
{
    Rng rng(11);
    double sum = 0.0;
    double sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i)
    {
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.03);
    EXPECT_NEAR(sq / n, 1.0, 0.05);
}

} // namespace
} // namespace beamloc
