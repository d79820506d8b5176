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

#include "beamloc/propagation.hpp"
#include "beamloc/random.hpp"
#include "beamloc/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beamloc
{
namespace
{

ScenarioConfig one_site(std::vector<Building> buildings = {})
{
    ScenarioConfig c;
    c.area_width = 200.0;
    c.area_height = 100.0;
    c.grid_resolution = 5.0;
    c.sites.rows = 1;
    c.sites.columns = 1;
    c.sites.origin = {100.0, 50.0};
    c.blocks.enabled = false;
    c.extra_buildings = std::move(buildings);
    return c;
}

TEST(PathLoss, FreeSpaceAtOneMetre)
{
    PropagationConfig cfg;
    cfg.model = PathLossModel::free_space;
    LinkGeometry g;
    g.distance_3d = 1.0;
    EXPECT_NEAR(path_loss(g, 28.0, cfg), 61.39, 0.005);
}

TEST(PathLoss, DistanceClampedBelowOneMetre)
{
    PropagationConfig cfg;
    LinkGeometry near;
    near.distance_3d = 0.2;
    LinkGeometry one;
    one.distance_3d = 1.0;
    EXPECT_DOUBLE_EQ(path_loss(near, 28.0, cfg), path_loss(one, 28.0, cfg));
}

TEST(PathLoss, TwentyDecibelsPerDecade)
{
    PropagationConfig cfg;
    cfg.model = PathLossModel::free_space;
    LinkGeometry a;
    a.distance_3d = 10.0;
    LinkGeometry b;
    b.distance_3d = 100.0;
    EXPECT_NEAR(path_loss(b, 3.5, cfg) - path_loss(a, 3.5, cfg), 20.0, 1e-9);
}

TEST(PathLoss, NlosAddsExtraExponent)
{
    PropagationConfig cfg;
    LinkGeometry los;
    los.distance_3d = 100.0;
    LinkGeometry nlos = los;
    nlos.los = false;
    EXPECT_NEAR(path_loss(nlos, 28.0, cfg) - path_loss(los, 28.0, cfg), 30.0, 1e-9);
    cfg.model = PathLossModel::free_space;
    EXPECT_DOUBLE_EQ(path_loss(nlos, 28.0, cfg), path_loss(los, 28.0, cfg));
}

TEST(PathLoss, MonotoneInDistance)
{
    PropagationConfig cfg;
    double prev = -1e9;
    for (double d = 1.0; d < 1000.0; d *= 1.3)
    {
        LinkGeometry g;
        g.distance_3d = d;
        const double pl = path_loss(g, 28.0, cfg);
        EXPECT_GE(pl, prev);
        prev = pl;
    }
}

TEST(PathLoss, ModelNamesRoundTrip)
{
    EXPECT_EQ(path_loss_model_from_string(to_string(PathLossModel::free_space)), PathLossModel::free_space);
    EXPECT_EQ(path_loss_model_from_string(to_string(PathLossModel::umi_los_nlos)), PathLossModel::umi_los_nlos);
    EXPECT_THROW(path_loss_model_from_string("hata"), std::invalid_argument);
}

TEST(Antenna, PeakHalfPowerAndFloor)
{
    Beam b;
    b.element_gain = 8.0;
    b.array_gain = 10.0;
    EXPECT_DOUBLE_EQ(antenna_gain(b, 0.0, 0.0), 18.0);
    EXPECT_NEAR(antenna_gain(b, 32.5, 0.0), 15.0, 1e-12);
    EXPECT_NEAR(antenna_gain(b, 0.0, -32.5), 15.0, 1e-12);
    EXPECT_DOUBLE_EQ(antenna_gain(b, 180.0, 0.0), 18.0 - 30.0);
    EXPECT_DOUBLE_EQ(antenna_gain(b, 400.0, 0.0), antenna_gain(b, 40.0, 0.0));
}

TEST(LineOfSight, HeightAwareLetsRaysOverLowBuildings)
{
    const std::vector<Building> low{{{{40.0, -5.0}, {60.0, 5.0}}, 3.0}};
    const Position3 tx{{0.0, 0.0}, 10.0};
    const Position3 rx{{100.0, 0.0}, 1.5};
    EXPECT_FALSE(line_of_sight(tx, rx, low, false));
    EXPECT_TRUE(line_of_sight(tx, rx, low, true));
    const std::vector<Building> tall{{{{40.0, -5.0}, {60.0, 5.0}}, 30.0}};
    EXPECT_FALSE(line_of_sight(tx, rx, tall, true));
}

TEST(LineOfSight, GrazingWallKeepsLos)
{
    const std::vector<Building> b{{{{40.0, 0.0}, {60.0, 10.0}}, 30.0}};
    EXPECT_TRUE(line_of_sight({{0.0, 0.0}, 10.0}, {{100.0, 0.0}, 1.5}, b));
}

TEST(BeamRsrp, MatchesHandComputation)
{
    const auto sc = build_scenario(one_site());
    const auto &site = sc.sites[0];
    const auto &sector = site.sectors[0];
    const auto &beam = sector.beams[5];
    PropagationConfig cfg;
    const Point2 ue{150.0, 80.0};

    const double dx = ue.x - site.position.x;
    const double dy = ue.y - site.position.y;
    const double d2 = std::hypot(dx, dy);
    const double d3 = std::hypot(d2, 1.5 - 10.0);
    const double az = std::atan2(dy, dx) * 180.0 / std::numbers::pi;
    const double el = std::atan2(1.5 - 10.0, d2) * 180.0 / std::numbers::pi;
    const double az_off = az - (sector.boresight_azimuth + beam.steer_azimuth);
    const double el_off = el - beam.steer_elevation;
    const double a = az_off / 65.0;
    const double e = el_off / 65.0;
    const double gain = beam.max_gain() - std::min(12.0 * (a * a + e * e), 30.0);
    const double pl = 20.0 * std::log10(d3) + 20.0 * std::log10(28e9) - 147.55;
    EXPECT_NEAR(beam_rsrp(ue, beam, sector, site, sc, cfg), 30.0 + gain - pl, 1e-9);
}

TEST(BeamRsrp, InsideBuildingThrows)
{
    const auto sc = build_scenario(one_site({{{{10.0, 10.0}, {30.0, 30.0}}, 20.0}}));
    const auto &site = sc.sites[0];
    EXPECT_THROW(beam_rsrp({20.0, 20.0}, site.sectors[0].beams[0], site.sectors[0], site, sc, PropagationConfig{}),
                 std::invalid_argument);
}

TEST(BeamRsrp, ClampedAtNoiseFloor)
{
    const auto sc = build_scenario(one_site());
    const auto &site = sc.sites[0];
    PropagationConfig cfg;
    cfg.noise_floor = -20.0;
    EXPECT_DOUBLE_EQ(beam_rsrp({0.0, 0.0}, site.sectors[0].beams[0], site.sectors[0], site, sc, cfg), -20.0);
}

TEST(BeamRsrp, BuildingCostsNlosLoss)
{
    const auto open = build_scenario(one_site());
    const auto blocked = build_scenario(one_site({{{{120.0, 40.0}, {130.0, 60.0}}, 20.0}}));
    PropagationConfig cfg;
    const Point2 ue{180.0, 50.0};
    const auto &s0 = open.sites[0];
    const auto &s1 = blocked.sites[0];
    const double diff = beam_rsrp(ue, s0.sectors[0].beams[8], s0.sectors[0], s0, open, cfg) -
                        beam_rsrp(ue, s1.sectors[0].beams[8], s1.sectors[0], s1, blocked, cfg);
    const double d3 = std::hypot(80.0, 8.5);
    EXPECT_NEAR(diff, 15.0 * std::log10(d3), 1e-9);
}

TEST(MeasureLocation, AgreesWithPerBeamEvaluation)
{
    auto c = one_site({{{{120.0, 40.0}, {130.0, 60.0}}, 20.0}});
    c.sites.columns = 2;
    c.sites.origin = {50.0, 50.0};
    c.sites.spacing_x = 100.0;
    const auto sc = build_scenario(c);
    PropagationConfig cfg;
    cfg.shadow_fading_sigma = 4.0;
    cfg.shadowing_seed = 17;
    for (const Point2 &ue : {Point2{10.0, 10.0}, Point2{180.0, 50.0}, Point2{100.0, 95.0}})
    {
        const auto m = measure_location(ue, sc, cfg);
        ASSERT_EQ(m.rsrp.size(), sc.beam_count());
        ASSERT_EQ(m.los_to_site.size(), sc.sites.size());
        std::size_t k = 0;
        for (const auto &site : sc.sites)
        {
            for (const auto &sector : site.sectors)
            {
                for (const auto &beam : sector.beams)
                {
                    EXPECT_DOUBLE_EQ(m.rsrp[k++], beam_rsrp(ue, beam, sector, site, sc, cfg));
                }
            }
        }
    }
}

TEST(Shadowing, DeterministicAndSeedDependent)
{
    const auto sc = build_scenario(one_site());
    const auto &site = sc.sites[0];
    const auto &sector = site.sectors[0];
    PropagationConfig off;
    PropagationConfig on;
    on.shadow_fading_sigma = 6.0;
    on.shadowing_seed = 1;
    PropagationConfig other = on;
    other.shadowing_seed = 2;
    const Point2 ue{150.0, 60.0};
    const double base = beam_rsrp(ue, sector.beams[0], sector, site, sc, off);
    const double a = beam_rsrp(ue, sector.beams[0], sector, site, sc, on);
    EXPECT_DOUBLE_EQ(a, beam_rsrp(ue, sector.beams[0], sector, site, sc, on));
    EXPECT_NE(a, base);
    EXPECT_NE(a, beam_rsrp(ue, sector.beams[0], sector, site, sc, other));
    // one draw per (location, site): every beam of the site shifts equally
    const double b = beam_rsrp(ue, sector.beams[3], sector, site, sc, on);
    const double b0 = beam_rsrp(ue, sector.beams[3], sector, site, sc, off);
    EXPECT_NEAR(a - base, b - b0, 1e-9);
}

} // namespace
} // namespace beamloc
