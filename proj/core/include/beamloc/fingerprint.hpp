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

#ifndef BEAMLOC_FINGERPRINT_HPP
#define BEAMLOC_FINGERPRINT_HPP

#include "beamloc/propagation.hpp"
#include "beamloc/scenario.hpp"

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamloc
{

class FeatureError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct BeamKey
{
    int cell_id = 0;
    int beam_id = 0;

    friend auto operator<=>(const BeamKey &, const BeamKey &) = default;
};

struct BeamReading
{
    int cell_id = 0;
    int beam_id = 0;
    double rsrp = 0.0; // dBm
};

/// One labelled grid location. RSRP values are stored densely, aligned to the
/// owning SampleSet's beam table; a value at or below the noise floor means
/// the beam was not detected.
struct FingerprintSample
{
    Point2 location;
    std::vector<double> rsrp;
    int serving_cell = 0;
    bool los_to_serving = false;
};

struct SampleSet
{
    std::vector<BeamKey> beams; // sorted by (cell_id, beam_id)
    std::vector<FingerprintSample> samples;
    double noise_floor = -140.0;
    std::uint64_t scenario_seed = 0;
    /// Locations where no beam cleared the noise floor (no sample emitted).
    std::size_t undetected_locations = 0;

    /// Detected beams of one sample as (cell, beam, rsrp) readings.
    std::vector<BeamReading> readings(const FingerprintSample &sample) const;
};

/// Evaluates every beam at every location of the scenario grid. Results are
/// identical for any `jobs` value. Throws FeatureError on an empty grid.
SampleSet generate_samples(const Scenario &scenario, const PropagationConfig &config, unsigned jobs = 1);

/// Cell owning the strongest reading; ties go to the lowest cell id, then the
/// lowest beam id. Throws FeatureError on an empty input.
int select_serving(std::span<const BeamReading> readings);

/// Keeps the samples with LoS to their serving cell, preserving order.
SampleSet filter_los(SampleSet samples);

double los_fraction(const SampleSet &samples);

enum class IdEncoding
{
    numeric,
    one_hot,
};

struct FeatureConfig
{
    std::string name = "s3n2";
    int n_serving_beams = 3;
    int n_neighbor_cells = 2;
    bool include_serving_cell_id = true;
    IdEncoding id_encoding = IdEncoding::numeric;

    friend bool operator==(const FeatureConfig &, const FeatureConfig &) = default;
};

enum class FieldKind
{
    serving_beam_id,
    serving_rsrp,
    serving_cell_id,
    neighbor_cell_id,
    neighbor_beam_id,
    neighbor_rsrp,
};

struct FieldDescriptor
{
    FieldKind kind = FieldKind::serving_rsrp;
    int slot = 0;         // 1-based rank of the beam / neighbour
    int one_hot_id = -1;  // >= 0 for one-hot indicator columns

    std::string name() const;
    bool is_id() const { return kind != FieldKind::serving_rsrp && kind != FieldKind::neighbor_rsrp; }

    friend bool operator==(const FieldDescriptor &, const FieldDescriptor &) = default;
};

/// Ids that one-hot columns enumerate.
struct IdDomain
{
    std::vector<int> cell_ids;
    int beams_per_cell = 0;

    static IdDomain from_beams(std::span<const BeamKey> beams);
};

/// Column layout for a config: serving beam ids, serving RSRPs, serving cell
/// id, then per neighbour (cell id, beam id, RSRP). With numeric ids the length
/// is 2*Ns + [cell id] + 3*Nn.
std::vector<FieldDescriptor> feature_layout(const FeatureConfig &config, const IdDomain &domain);
std::vector<std::string> layout_names(std::span<const FieldDescriptor> layout);

struct FeatureVector
{
    std::vector<double> values;
    std::shared_ptr<const std::vector<FieldDescriptor>> layout;
};

enum class ExclusionReason
{
    none,
    too_few_serving_beams,
    too_few_neighbor_cells,
};

struct Extraction
{
    std::optional<FeatureVector> vector;
    ExclusionReason reason = ExclusionReason::none;
};

/// Serving beams are ranked by RSRP (ties: lower beam id); neighbour cells by
/// their strongest beam (ties: lower cell id), each contributing that beam.
Extraction extract_features(const SampleSet &set, const FingerprintSample &sample, const FeatureConfig &config,
                            const std::shared_ptr<const std::vector<FieldDescriptor>> &layout,
                            const IdDomain &domain);
Extraction extract_features(const SampleSet &set, const FingerprintSample &sample, const FeatureConfig &config);

struct ExclusionCounts
{
    std::size_t too_few_serving_beams = 0;
    std::size_t too_few_neighbor_cells = 0;

    std::size_t total() const { return too_few_serving_beams + too_few_neighbor_cells; }
};

/// Per-column statistics from training rows. std is the population standard
/// deviation; a zero std is kept as 0 and normalisation divides by 1 instead.
struct NormStats
{
    Eigen::VectorXd mean;
    Eigen::VectorXd std;

    Eigen::Index size() const { return mean.size(); }
    Eigen::VectorXd divisor() const;
    static NormStats compute(const Eigen::MatrixXd &rows);
};

struct Dataset
{
    FeatureConfig config;
    std::vector<FieldDescriptor> layout;
    Eigen::MatrixXd features; // rows x columns, unnormalised
    Eigen::MatrixXd labels;   // rows x 2, metres
    std::vector<int> serving_cells;
    std::vector<std::size_t> sample_ids; // index into the source SampleSet
    NormStats norm;
    std::vector<std::size_t> train_rows; // ascending
    std::vector<std::size_t> test_rows;  // ascending
    std::uint64_t scenario_seed = 0;
    std::uint64_t split_seed = 0;
    double split_fraction = 0.9;
    ExclusionCounts excluded;

    Eigen::Index rows() const { return features.rows(); }
    Eigen::MatrixXd select_features(std::span<const std::size_t> rows) const;
    Eigen::MatrixXd select_labels(std::span<const std::size_t> rows) const;
};

/// Extracts features, then makes a seeded random split with round(f*n)
/// training rows and computes normalisation statistics on those rows only.
/// Throws FeatureError if fewer than 10 rows survive extraction or the
/// fraction is outside (0, 1).
Dataset build_dataset(const SampleSet &samples, const FeatureConfig &config, double split_fraction,
                      std::uint64_t seed);

/// Column-wise (x - mean) / std with the dataset's training statistics.
Eigen::MatrixXd normalize(const NormStats &stats, const Eigen::MatrixXd &rows);
Eigen::MatrixXd denormalize(const NormStats &stats, const Eigen::MatrixXd &rows);
inline Eigen::MatrixXd normalize(const Dataset &dataset, const Eigen::MatrixXd &rows)
{
    return normalize(dataset.norm, rows);
}

struct CellPartition
{
    std::map<int, Dataset> cells;
    std::vector<std::pair<int, std::size_t>> skipped; // (cell id, row count) below the minimum
};

/// One dataset per serving cell with the serving-cell id feature removed;
/// each cell gets its own seeded split and statistics.
CellPartition partition_by_cell(const SampleSet &samples, FeatureConfig config, double split_fraction,
                                std::uint64_t seed, std::size_t min_rows = 50);

/// Splits a pooled dataset by serving cell, inheriting each row's train/test
/// assignment so the pooled and per-cell test populations coincide.
CellPartition partition_by_cell(const Dataset &pooled, std::size_t min_rows = 50);

nlohmann::json to_json(const FeatureConfig &config);
FeatureConfig feature_config_from_json(const nlohmann::json &j);
std::string to_string(IdEncoding encoding);
IdEncoding id_encoding_from_string(const std::string &name);

/// CSV (layout names + label_x,label_y) plus JSON sidecar; reload is bit-exact.
void save_dataset(const Dataset &dataset, const std::filesystem::path &csv_path,
                  const std::filesystem::path &sidecar_path);
Dataset load_dataset(const std::filesystem::path &csv_path, const std::filesystem::path &sidecar_path);

} // namespace beamloc

#endif // BEAMLOC_FINGERPRINT_HPP
