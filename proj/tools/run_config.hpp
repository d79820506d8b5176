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

#ifndef BEAMLOC_TOOLS_RUN_CONFIG_HPP
#define BEAMLOC_TOOLS_RUN_CONFIG_HPP

#include "beamloc/dtree.hpp"
#include "beamloc/eval.hpp"
#include "beamloc/fingerprint.hpp"
#include "beamloc/mlp.hpp"
#include "beamloc/propagation.hpp"
#include "beamloc/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamloc::app
{

/// Raised for unreadable or invalid configuration; the message names the
/// offending section and key.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct ExperimentSpec
{
    std::string id;
    std::string feature_set;
    Topology topology = Topology::network_level;
    ModelKind model = ModelKind::mlp;
    std::vector<int> hidden_layers{64};
    int replicas = 1;
    TrainConfig train;
    TreeConfig tree;
};

struct RunConfig
{
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = "out";
    ScenarioConfig scenario;
    PropagationConfig propagation;
    double split_fraction = 0.9;
    std::size_t min_cell_rows = 50;
    std::vector<FeatureConfig> feature_sets;
    TrainConfig train;
    TreeConfig tree;
    std::vector<ExperimentSpec> experiments;

    const FeatureConfig &feature_set(const std::string &name) const;
};

/// Parses a YAML run configuration. A seed override replaces the file's seed
/// before any sub-seed is derived.
RunConfig load_run_config(const std::filesystem::path &path, std::optional<std::uint64_t> seed_override = {});
RunConfig parse_run_config(const std::string &text, std::optional<std::uint64_t> seed_override = {});

/// Expands replicas into concrete descriptors. Sub-seeds depend only on the
/// global seed and the replica index, so arms of one replica share a split.
std::vector<ExperimentDescriptor> expand_matrix(const RunConfig &config);

} // namespace beamloc::app

#endif // BEAMLOC_TOOLS_RUN_CONFIG_HPP
