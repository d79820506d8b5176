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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beamloc
{

namespace
{
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::uint64_t location_key(const Point2 &p)
{
    // millimetre lattice; independent of enumeration order
    auto ix = static_cast<std::int64_t>(std::llround(p.x * 1000.0));
    auto iy = static_cast<std::int64_t>(std::llround(p.y * 1000.0));
    return splitmix64(static_cast<std::uint64_t>(ix)) ^ static_cast<std::uint64_t>(iy);
}

double shadowing_db(const Point2 &location, const Site &site, const PropagationConfig &config)
{
    if (config.shadow_fading_sigma <= 0.0)
    {
        return 0.0;
    }
    return config.shadow_fading_sigma *
           keyed_normal(config.shadowing_seed, location_key(location), static_cast<std::uint64_t>(site.id));
}

void require_outside_buildings(const Point2 &location, const Scenario &scenario)
{
    for (const auto &b : scenario.buildings)
    {
        if (b.footprint.contains_closed(location))
        {
            throw std::invalid_argument("location lies inside a building");
        }
    }
}

double rsrp_for(const Beam &beam, const Sector &sector, const LinkGeometry &g, double pl, double shadow,
                const PropagationConfig &config)
{
    const double az_off = wrap_degrees(g.azimuth_to_ue - (sector.boresight_azimuth + beam.steer_azimuth));
    const double el_off = g.elevation_to_ue - beam.steer_elevation;
    const double rsrp = sector.tx_power + antenna_gain(beam, az_off, el_off) - pl - shadow;
    return std::max(rsrp, config.noise_floor);
}
} // namespace

std::string to_string(PathLossModel model)
{
    switch (model)
    {
    case PathLossModel::free_space:
        return "free_space";
    case PathLossModel::umi_los_nlos:
        return "umi_los_nlos";
    }
    return "unknown";
}

PathLossModel path_loss_model_from_string(const std::string &name)
{
    if (name == "free_space")
    {
        return PathLossModel::free_space;
    }
    if (name == "umi_los_nlos")
    {
        return PathLossModel::umi_los_nlos;
    }
    throw std::invalid_argument("unknown path loss model '" + name + "'");
}

bool line_of_sight(const Position3 &p, const Position3 &q, std::span<const Building> buildings, bool height_aware)
{
    for (const auto &b : buildings)
    {
        const auto crossing = segment_interior_crossing(p.xy, q.xy, b.footprint);
        if (!crossing)
        {
            continue;
        }
        if (!height_aware)
        {
            return false;
        }
        const double h_enter = p.height + crossing->t_enter * (q.height - p.height);
        const double h_exit = p.height + crossing->t_exit * (q.height - p.height);
        if (b.height > std::min(h_enter, h_exit))
        {
            return false;
        }
    }
    return true;
}

LinkGeometry link_geometry(const Site &site, const Point2 &ue, double ue_height, std::span<const Building> buildings,
                           bool height_aware)
{
    LinkGeometry g;
    const double dx = ue.x - site.position.x;
    const double dy = ue.y - site.position.y;
    const double dh = ue_height - site.height;
    const double d2 = std::hypot(dx, dy);
    g.distance_3d = std::hypot(d2, dh);
    g.azimuth_to_ue = wrap_degrees(std::atan2(dy, dx) * kRadToDeg);
    g.elevation_to_ue = std::atan2(dh, d2) * kRadToDeg;
    g.los = line_of_sight({site.position, site.height}, {ue, ue_height}, buildings, height_aware);
    return g;
}

double path_loss(const LinkGeometry &geometry, double frequency_ghz, const PropagationConfig &config)
{
    const double d = std::max(geometry.distance_3d, 1.0);
    const double log_d = std::log10(d);
    double pl = 20.0 * log_d + 20.0 * std::log10(frequency_ghz * 1e9) - 147.55;
    if (config.model == PathLossModel::umi_los_nlos && !geometry.los)
    {
        pl += 10.0 * config.nlos_extra_loss_exponent * log_d;
    }
    return pl;
}

double antenna_gain(const Beam &beam, double azimuth_offset, double elevation_offset)
{
    const double az = wrap_degrees(azimuth_offset) / beam.azimuth_beamwidth;
    const double el = elevation_offset / beam.elevation_beamwidth;
    const double attenuation = std::min(12.0 * az * az + 12.0 * el * el, beam.front_to_back);
    return beam.max_gain() - attenuation;
}

double beam_rsrp(const Point2 &location, const Beam &beam, const Sector &sector, const Site &site,
                 const Scenario &scenario, const PropagationConfig &config)
{
    require_outside_buildings(location, scenario);
    const auto g = link_geometry(site, location, config.ue_height, scenario.buildings, config.height_aware_los);
    const double pl = path_loss(g, scenario.carrier_frequency_ghz, config);
    return rsrp_for(beam, sector, g, pl, shadowing_db(location, site, config), config);
}

LocationMeasurement measure_location(const Point2 &location, const Scenario &scenario,
                                     const PropagationConfig &config)
{
    require_outside_buildings(location, scenario);
    LocationMeasurement m;
    m.rsrp.reserve(scenario.beam_count());
    m.los_to_site.reserve(scenario.sites.size());
    for (const auto &site : scenario.sites)
    {
        const auto g = link_geometry(site, location, config.ue_height, scenario.buildings, config.height_aware_los);
        m.los_to_site.push_back(g.los);
        const double pl = path_loss(g, scenario.carrier_frequency_ghz, config);
        const double shadow = shadowing_db(location, site, config);
        for (const auto &sector : site.sectors)
        {
            for (const auto &beam : sector.beams)
            {
                m.rsrp.push_back(rsrp_for(beam, sector, g, pl, shadow, config));
            }
        }
    }
    return m;
}

} // namespace beamloc
