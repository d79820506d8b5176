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

#ifndef BEAMLOC_PROPAGATION_HPP
#define BEAMLOC_PROPAGATION_HPP

#include "beamloc/geometry.hpp"
#include "beamloc/scenario.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace beamloc
{

struct Position3
{
    Point2 xy;
    double height = 0.0; // m above ground
};

struct LinkGeometry
{
    double distance_3d = 1.0;     // m
    double azimuth_to_ue = 0.0;   // deg, global frame, (-180, 180]
    double elevation_to_ue = 0.0; // deg, negative below the transmitter
    bool los = true;
};

enum class PathLossModel
{
    free_space,
    umi_los_nlos,
};

std::string to_string(PathLossModel model);
PathLossModel path_loss_model_from_string(const std::string &name);

struct PropagationConfig
{
    PathLossModel model = PathLossModel::umi_los_nlos;
    double nlos_extra_loss_exponent = 1.5; // added to the free-space exponent of 2
    double shadow_fading_sigma = 0.0;      // dB; 0 disables shadowing
    double noise_floor = -140.0;           // dBm; RSRP clamp
    double ue_height = 1.5;                // m
    bool height_aware_los = false;
    std::uint64_t shadowing_seed = 0;
};

/// Direct-path visibility between two elevated points. With height_aware off
/// any crossing of a footprint interior blocks; with it on, a building blocks
/// only if it is taller than the ray somewhere above its footprint.
bool line_of_sight(const Position3 &p, const Position3 &q, std::span<const Building> buildings,
                   bool height_aware = false);

LinkGeometry link_geometry(const Site &site, const Point2 &ue, double ue_height, std::span<const Building> buildings,
                           bool height_aware = false);

/// Free space: 20 log10(d) + 20 log10(f_Hz) - 147.55, d clamped to >= 1 m.
/// umi_los_nlos adds 10 * extra_exponent * log10(d) when the link is NLoS.
double path_loss(const LinkGeometry &geometry, double frequency_ghz, const PropagationConfig &config);

/// Parabolic pattern in dB, floored at the front-to-back ratio.
double antenna_gain(const Beam &beam, double azimuth_offset, double elevation_offset);

/// RSRP of one beam at a ground location (UE at config.ue_height).
/// Throws std::invalid_argument if the location is inside a building.
double beam_rsrp(const Point2 &location, const Beam &beam, const Sector &sector, const Site &site,
                 const Scenario &scenario, const PropagationConfig &config);

/// All beams of all cells at one location, in scenario order (site, sector,
/// beam). Also reports per-site LoS. Same values as calling beam_rsrp per beam.
struct LocationMeasurement
{
    std::vector<double> rsrp;     // one per beam, scenario order
    std::vector<bool> los_to_site; // one per site
};
LocationMeasurement measure_location(const Point2 &location, const Scenario &scenario,
                                     const PropagationConfig &config);

} // namespace beamloc

#endif // BEAMLOC_PROPAGATION_HPP
