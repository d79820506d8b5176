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

#ifndef BEAMLOC_SCENARIO_HPP
#define BEAMLOC_SCENARIO_HPP

#include "beamloc/geometry.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamloc
{

class ScenarioError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Building
{
    Rect footprint;
    double height = 20.0; // m

    friend bool operator==(const Building &, const Building &) = default;
};

/// One SSB beam of a sector's grid-of-beams. Steering azimuth is relative to
/// the sector boresight; steering elevation is absolute (negative = below the
/// horizon) and already includes the mechanical downtilt.
struct Beam
{
    int beam_id = 0;
    double steer_azimuth = 0.0;     // deg
    double steer_elevation = 0.0;   // deg
    double azimuth_beamwidth = 65.0;   // deg, 3 dB
    double elevation_beamwidth = 65.0; // deg, 3 dB
    double element_gain = 8.0;      // dBi
    double front_to_back = 30.0;    // dB
    double array_gain = 0.0;        // dBi

    double max_gain() const { return element_gain + array_gain; }

    friend bool operator==(const Beam &, const Beam &) = default;
};

struct Sector
{
    int cell_id = 0;
    double boresight_azimuth = 0.0;   // deg, counter-clockwise from +x
    double mechanical_downtilt = 5.0; // deg
    double tx_power = 30.0;           // dBm
    std::vector<Beam> beams;

    friend bool operator==(const Sector &, const Sector &) = default;
};

struct Site
{
    int id = 0;
    Point2 position;
    double height = 10.0; // m
    std::vector<Sector> sectors;

    friend bool operator==(const Site &, const Site &) = default;
};

struct Scenario
{
    std::vector<Building> buildings;
    std::vector<Site> sites;
    double carrier_frequency_ghz = 28.0;
    Rect area;
    double grid_resolution = 1.0; // m
    std::uint64_t rng_seed = 0;

    std::size_t cell_count() const;
    std::size_t beam_count() const;
    /// Site owning the given cell, or nullptr.
    const Site *site_of_cell(int cell_id) const;
    const Sector *sector_of_cell(int cell_id) const;

    friend bool operator==(const Scenario &, const Scenario &) = default;
};

/// Grid-of-beams layout: `count` beams arranged as (count / rows) evenly
/// spaced azimuth steers per elevation row.
struct BeamGridConfig
{
    int count = 32;
    std::vector<double> elevation_steers{-3.0, -12.0}; // deg, one per row
    double azimuth_span = 120.0;                       // deg, centred on boresight
    double azimuth_beamwidth = 65.0;
    double elevation_beamwidth = 65.0;
    double element_gain = 8.0;
    double front_to_back = 30.0;
    std::optional<double> array_gain; // default 10*log10(count)
};

struct SiteGridConfig
{
    int rows = 2;
    int columns = 4;
    Point2 origin{20.0, 45.0};
    double spacing_x = 200.0;
    double spacing_y = 110.0;
    double height = 10.0;
    std::vector<double> sector_azimuths{30.0, 150.0, 270.0};
};

/// Parametric city blocks: streets run along every site row/column (and
/// optionally through the middle of each span); each block holds at most one
/// building set back from the kerb, or stays open as a park.
struct BlockLayoutConfig
{
    bool enabled = true;
    double street_width = 20.0;
    int blocks_per_span_x = 2;
    int blocks_per_span_y = 1;
    double setback_min = 3.0;
    double setback_max = 10.0;
    double height_min = 15.0;
    double height_max = 40.0;
    double park_probability = 0.2;
    double min_building_size = 10.0;
};

struct ScenarioConfig
{
    double area_width = 640.0;
    double area_height = 200.0;
    double grid_resolution = 1.0;
    double carrier_frequency_ghz = 28.0;
    double tx_power = 30.0;
    double mechanical_downtilt = 5.0;
    SiteGridConfig sites;
    BeamGridConfig beams;
    BlockLayoutConfig blocks;
    std::vector<Building> extra_buildings;
    std::uint64_t seed = 1;
};

/// Builds the deployment. Pure function of the config (including its seed).
/// Throws ScenarioError on overlapping buildings, a site inside a building or
/// outside the area, or zero sites.
Scenario build_scenario(const ScenarioConfig &config);

/// Tiles the sector's azimuth span. count == 1 yields one boresight beam
/// aligned with the mechanical downtilt; otherwise count must be divisible by
/// the number of elevation rows.
std::vector<Beam> synthesize_beam_grid(const Sector &sector, int count, const BeamGridConfig &layout);

/// Lattice points at grid_resolution spacing inside the area and strictly
/// outside every building footprint, row-major (y outer, x inner).
std::vector<Point2> enumerate_locations(const Scenario &scenario);

nlohmann::json scenario_to_json(const Scenario &scenario);

} // namespace beamloc

#endif // BEAMLOC_SCENARIO_HPP
