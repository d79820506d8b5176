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

#ifndef BEAMLOC_EVAL_HPP
#define BEAMLOC_EVAL_HPP

#include "beamloc/dtree.hpp"
#include "beamloc/fingerprint.hpp"
#include "beamloc/mlp.hpp"

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamloc
{

class EvalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Mean and population standard deviation (divisor N) of Euclidean errors.
struct ErrorStats
{
    double mean = 0.0;
    double std = 0.0;
    std::size_t n = 0;
    std::vector<double> errors;
};

/// Per-row sqrt(dx^2 + dy^2).
std::vector<double> euclidean_errors(const Eigen::MatrixXd &prediction, const Eigen::MatrixXd &truth);

ErrorStats error_stats(std::vector<double> errors);

struct CdfPoint
{
    double value;
    double fraction; // count(x <= value) / N
};

/// One point per distinct error value, ascending; the last fraction is 1.
std::vector<CdfPoint> error_cdf(std::vector<double> errors);

/// Nearest-rank percentile: the ceil(p/100 * N)-th smallest value (p in (0, 100]).
double percentile(std::vector<double> errors, double p);

enum class Topology
{
    network_level,
    cell_specific,
};

enum class ModelKind
{
    mlp,
    dtree,
};

std::string to_string(Topology t);
std::string to_string(ModelKind m);
Topology topology_from_string(const std::string &s);
ModelKind model_kind_from_string(const std::string &s);

struct ExperimentDescriptor
{
    std::string id;
    FeatureConfig features;
    Topology topology = Topology::network_level;
    ModelKind model = ModelKind::mlp;
    std::vector<int> hidden_layers{64};
    TrainConfig train;
    TreeConfig tree;
    int replica = 0;
    std::uint64_t split_seed = 0;
    std::uint64_t init_seed = 0;
    std::size_t min_cell_rows = 50;
};

struct CellResult
{
    int cell_id = 0;
    ErrorStats train;
    ErrorStats test;
    int epochs = 0;
};

struct EvalReport
{
    std::string experiment_id;
    FeatureConfig feature_config;
    Topology topology = Topology::network_level;
    ModelKind model_kind = ModelKind::mlp;
    std::string architecture;
    int replica = 0;
    std::uint64_t split_seed = 0;
    std::uint64_t init_seed = 0;
    std::uint64_t shuffle_seed = 0;
    ErrorStats train;
    ErrorStats test;
    /// Predicting the pooled training-label mean for every test row.
    ErrorStats centroid_test;
    std::vector<CdfPoint> cdf;
    std::map<int, double> percentiles; // 50, 80, 90
    std::vector<CellResult> per_cell;  // cell-specific only
    std::vector<std::pair<int, std::size_t>> skipped_cells;
    int epochs = 0; // network-level MLP only
};

/// Trains the descriptor's model on the pooled dataset's training rows (or on
/// one model per serving cell, inheriting the pooled split) and evaluates on
/// the held-out rows. Cell-specific test errors are pooled across cells.
EvalReport run_experiment(const Dataset &pooled, const ExperimentDescriptor &descriptor);

/// Thread-safe lazy cache of pooled datasets keyed by (feature set, split seed).
class DatasetCache
{
  public:
    DatasetCache(std::shared_ptr<const SampleSet> samples, double split_fraction);

    const Dataset &get(const FeatureConfig &features, std::uint64_t split_seed);

  private:
    std::shared_ptr<const SampleSet> m_samples;
    double m_split_fraction;
    std::mutex m_mutex;
    std::map<std::pair<std::string, std::uint64_t>, std::unique_ptr<Dataset>> m_datasets;
};

struct ExperimentOutcome
{
    std::string experiment_id;
    std::optional<EvalReport> report;
    std::string error;
};

/// Runs every experiment (up to `jobs` concurrently); a failing experiment is
/// recorded and the rest continue. Outcomes keep the matrix order.
std::vector<ExperimentOutcome> run_matrix(const std::vector<ExperimentDescriptor> &matrix, DatasetCache &cache,
                                          unsigned jobs = 1);

nlohmann::json report_to_json(const EvalReport &report);
std::string cdf_csv(const EvalReport &report);
/// One row per successful report, keyed by feature set, hidden layers, topology.
std::string comparison_csv(const std::vector<ExperimentOutcome> &outcomes);

} // namespace beamloc

#endif // BEAMLOC_EVAL_HPP
