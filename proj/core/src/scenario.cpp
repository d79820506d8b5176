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

#include "beamloc/scenario.hpp"

#include "beamloc/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace beamloc
{

std::size_t Scenario::cell_count() const
{
    std::size_t n = 0;
    for (const auto &site : sites)
    {
        n += site.sectors.size();
    }
    return n;
}

std::size_t Scenario::beam_count() const
{
    std::size_t n = 0;
    for (const auto &site : sites)
    {
        for (const auto &sector : site.sectors)
        {
            n += sector.beams.size();
        }
    }
    return n;
}

const Site *Scenario::site_of_cell(int cell_id) const
{
    for (const auto &site : sites)
    {
        for (const auto &sector : site.sectors)
        {
            if (sector.cell_id == cell_id)
            {
                return &site;
            }
        }
    }
    return nullptr;
}

const Sector *Scenario::sector_of_cell(int cell_id) const
{
    for (const auto &site : sites)
    {
        for (const auto &sector : site.sectors)
        {
            if (sector.cell_id == cell_id)
            {
                return &sector;
            }
        }
    }
    return nullptr;
}

std::vector<Beam> synthesize_beam_grid(const Sector &sector, int count, const BeamGridConfig &layout)
{
    if (count < 1)
    {
        throw ScenarioError("beam count must be >= 1");
    }
    if (layout.azimuth_beamwidth <= 0.0 || layout.azimuth_beamwidth >= 180.0 || layout.elevation_beamwidth <= 0.0 ||
        layout.elevation_beamwidth >= 180.0)
    {
        throw ScenarioError("beamwidths must lie in (0, 180) degrees");
    }

    Beam proto;
    proto.azimuth_beamwidth = layout.azimuth_beamwidth;
    proto.elevation_beamwidth = layout.elevation_beamwidth;
    proto.element_gain = layout.element_gain;
    proto.front_to_back = layout.front_to_back;
    proto.array_gain = layout.array_gain.value_or(10.0 * std::log10(static_cast<double>(count)));

    std::vector<Beam> beams;
    if (count == 1)
    {
        Beam b = proto;
        b.beam_id = 0;
        b.steer_azimuth = 0.0;
        b.steer_elevation = -sector.mechanical_downtilt;
        beams.push_back(b);
        return beams;
    }

    const auto rows = static_cast<int>(layout.elevation_steers.size());
    if (rows < 1 || count % rows != 0)
    {
        std::ostringstream msg;
        msg << "beam count " << count << " is not divisible into " << rows << " elevation rows";
        throw ScenarioError(msg.str());
    }
    const int per_row = count / rows;
    const double spacing = layout.azimuth_span / per_row;
    beams.reserve(static_cast<std::size_t>(count));
    for (int r = 0; r < rows; ++r)
    {
        for (int k = 0; k < per_row; ++k)
        {
            Beam b = proto;
            b.beam_id = r * per_row + k;
            b.steer_azimuth = -0.5 * layout.azimuth_span + (k + 0.5) * spacing;
            b.steer_elevation = layout.elevation_steers[static_cast<std::size_t>(r)];
            beams.push_back(b);
        }
    }
    return beams;
}

namespace
{

// Open intervals along one axis between street corridors, clipped to [0, extent].
std::vector<std::pair<double, double>> block_intervals(std::vector<double> centres, double street_width, double extent)
{
    std::sort(centres.begin(), centres.end());
    std::vector<std::pair<double, double>> out;
    double cursor = 0.0;
    for (double c : centres)
    {
        double lo = c - 0.5 * street_width;
        if (lo > cursor)
        {
            out.emplace_back(cursor, std::min(lo, extent));
        }
        cursor = std::max(cursor, c + 0.5 * street_width);
    }
    if (cursor < extent)
    {
        out.emplace_back(cursor, extent);
    }
    return out;
}

std::vector<double> street_centres(double origin, double spacing, int count, int blocks_per_span)
{
    std::vector<double> centres;
    for (int i = 0; i < count; ++i)
    {
        centres.push_back(origin + i * spacing);
        if (i + 1 < count)
        {
            for (int m = 1; m < blocks_per_span; ++m)
            {
                centres.push_back(origin + i * spacing + spacing * m / blocks_per_span);
            }
        }
    }
    return centres;
}

std::vector<Building> generate_blocks(const ScenarioConfig &config)
{
    const auto &bc = config.blocks;
    std::vector<Building> out;
    if (!bc.enabled)
    {
        return out;
    }
    if (bc.setback_min < 0.0 || bc.setback_max < bc.setback_min || bc.height_min <= 0.0 ||
        bc.height_max < bc.height_min)
    {
        throw ScenarioError("blocks: inconsistent setback/height ranges");
    }
    const auto xs = block_intervals(
        street_centres(config.sites.origin.x, config.sites.spacing_x, config.sites.columns, bc.blocks_per_span_x),
        bc.street_width, config.area_width);
    const auto ys = block_intervals(
        street_centres(config.sites.origin.y, config.sites.spacing_y, config.sites.rows, bc.blocks_per_span_y),
        bc.street_width, config.area_height);

    Rng rng(derive_seed(config.seed, SeedStream::scenario, 0));
    for (const auto &[y0, y1] : ys)
    {
        for (const auto &[x0, x1] : xs)
        {
            // Fixed number of draws per block keeps later blocks stable when
            // one block changes outcome.
            const double park = rng.uniform01();
            const double s_left = rng.uniform(bc.setback_min, bc.setback_max);
            const double s_right = rng.uniform(bc.setback_min, bc.setback_max);
            const double s_bottom = rng.uniform(bc.setback_min, bc.setback_max);
            const double s_top = rng.uniform(bc.setback_min, bc.setback_max);
            const double height = rng.uniform(bc.height_min, bc.height_max);
            if (park < bc.park_probability)
            {
                continue;
            }
            Rect fp{{x0 + s_left, y0 + s_bottom}, {x1 - s_right, y1 - s_top}};
            if (fp.width() < bc.min_building_size || fp.height() < bc.min_building_size)
            {
                continue;
            }
            out.push_back(Building{fp, height});
        }
    }
    return out;
}

} // namespace

Scenario build_scenario(const ScenarioConfig &config)
{
    if (config.area_width <= 0.0 || config.area_height <= 0.0)
    {
        throw ScenarioError("area dimensions must be positive");
    }
    if (!(config.grid_resolution > 0.0))
    {
        throw ScenarioError("grid_resolution must be positive");
    }
    if (config.sites.rows < 1 || config.sites.columns < 1)
    {
        throw ScenarioError("scenario must contain at least one site");
    }
    if (config.sites.height <= 0.0)
    {
        throw ScenarioError("site height must be positive");
    }
    if (config.sites.sector_azimuths.size() != 3)
    {
        throw ScenarioError("each site must have exactly 3 sectors");
    }

    Scenario sc;
    sc.area = Rect{{0.0, 0.0}, {config.area_width, config.area_height}};
    sc.grid_resolution = config.grid_resolution;
    sc.carrier_frequency_ghz = config.carrier_frequency_ghz;
    sc.rng_seed = config.seed;

    sc.buildings = generate_blocks(config);
    for (const auto &b : config.extra_buildings)
    {
        sc.buildings.push_back(b);
    }
    for (std::size_t i = 0; i < sc.buildings.size(); ++i)
    {
        const auto &bi = sc.buildings[i];
        if (!bi.footprint.valid() || !(bi.height > 0.0))
        {
            throw ScenarioError("building " + std::to_string(i) + " has an empty footprint or non-positive height");
        }
        for (std::size_t j = i + 1; j < sc.buildings.size(); ++j)
        {
            if (interiors_overlap(bi.footprint, sc.buildings[j].footprint))
            {
                throw ScenarioError("buildings " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
            }
        }
    }

    int cell_id = 1;
    for (int r = 0; r < config.sites.rows; ++r)
    {
        for (int c = 0; c < config.sites.columns; ++c)
        {
            Site site;
            site.id = r * config.sites.columns + c;
            site.position = {config.sites.origin.x + c * config.sites.spacing_x,
                             config.sites.origin.y + r * config.sites.spacing_y};
            site.height = config.sites.height;
            if (!sc.area.contains_closed(site.position))
            {
                throw ScenarioError("site " + std::to_string(site.id) + " lies outside the area");
            }
            for (const auto &b : sc.buildings)
            {
                if (b.footprint.contains_closed(site.position))
                {
                    throw ScenarioError("site " + std::to_string(site.id) + " lies inside a building");
                }
            }
            for (double az : config.sites.sector_azimuths)
            {
                Sector sector;
                sector.cell_id = cell_id++;
                sector.boresight_azimuth = wrap_degrees(az);
                sector.mechanical_downtilt = config.mechanical_downtilt;
                sector.tx_power = config.tx_power;
                sector.beams = synthesize_beam_grid(sector, config.beams.count, config.beams);
                site.sectors.push_back(std::move(sector));
            }
            sc.sites.push_back(std::move(site));
        }
    }
    return sc;
}

std::vector<Point2> enumerate_locations(const Scenario &scenario)
{
    const double res = scenario.grid_resolution;
    const auto nx = static_cast<std::size_t>(std::floor(scenario.area.width() / res + 1e-9)) + 1;
    const auto ny = static_cast<std::size_t>(std::floor(scenario.area.height() / res + 1e-9)) + 1;
    std::vector<Point2> out;
    out.reserve(nx * ny);
    for (std::size_t iy = 0; iy < ny; ++iy)
    {
        const double y = scenario.area.min.y + static_cast<double>(iy) * res;
        for (std::size_t ix = 0; ix < nx; ++ix)
        {
            const Point2 p{scenario.area.min.x + static_cast<double>(ix) * res, y};
            bool blocked = false;
            for (const auto &b : scenario.buildings)
            {
                if (b.footprint.contains_closed(p))
                {
                    blocked = true;
                    break;
                }
            }
            if (!blocked)
            {
                out.push_back(p);
            }
        }
    }
    return out;
}

nlohmann::json scenario_to_json(const Scenario &scenario)
{
    using nlohmann::json;
    json j;
    j["carrier_frequency_ghz"] = scenario.carrier_frequency_ghz;
    j["area"] = {{"min", {scenario.area.min.x, scenario.area.min.y}}, {"max", {scenario.area.max.x, scenario.area.max.y}}};
    j["grid_resolution"] = scenario.grid_resolution;
    j["rng_seed"] = scenario.rng_seed;
    json buildings = json::array();
    for (const auto &b : scenario.buildings)
    {
        buildings.push_back({{"min_corner", {b.footprint.min.x, b.footprint.min.y}},
                             {"max_corner", {b.footprint.max.x, b.footprint.max.y}},
                             {"height", b.height}});
    }
    j["buildings"] = std::move(buildings);
    json sites = json::array();
    for (const auto &site : scenario.sites)
    {
        json js{{"id", site.id}, {"position", {site.position.x, site.position.y}}, {"height", site.height}};
        json sectors = json::array();
        for (const auto &sector : site.sectors)
        {
            json jsec{{"cell_id", sector.cell_id},
                      {"boresight_azimuth", sector.boresight_azimuth},
                      {"mechanical_downtilt", sector.mechanical_downtilt},
                      {"tx_power", sector.tx_power}};
            json beams = json::array();
            for (const auto &b : sector.beams)
            {
                beams.push_back({{"beam_id", b.beam_id},
                                 {"steer_azimuth", b.steer_azimuth},
                                 {"steer_elevation", b.steer_elevation},
                                 {"azimuth_beamwidth", b.azimuth_beamwidth},
                                 {"elevation_beamwidth", b.elevation_beamwidth},
                                 {"element_gain", b.element_gain},
                                 {"front_to_back", b.front_to_back},
                                 {"array_gain", b.array_gain}});
            }
            jsec["beams"] = std::move(beams);
            sectors.push_back(std::move(jsec));
        }
        js["sectors"] = std::move(sectors);
        sites.push_back(std::move(js));
    }
    j["sites"] = std::move(sites);
    return j;
}

} // namespace beamloc
