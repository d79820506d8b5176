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

#ifndef BEAMLOC_MLP_HPP
#define BEAMLOC_MLP_HPP

#include "beamloc/fingerprint.hpp"

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamloc
{

class MlpError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Activation
{
    tanh,
    linear,
};

struct MlpArchitecture
{
    int input_dim = 1;
    std::vector<int> hidden_layers{64};
    int output_dim = 2;
    Activation hidden_activation = Activation::tanh;
    Activation output_activation = Activation::linear;

    /// e.g. "13-64-64-2"
    std::string summary() const;

    friend bool operator==(const MlpArchitecture &, const MlpArchitecture &) = default;
};

/// Fully connected layer; weights are (outputs x inputs).
struct DenseLayer
{
    Eigen::MatrixXd weights;
    Eigen::VectorXd bias;
};

struct AdamConfig
{
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct EarlyStopConfig
{
    int patience = 20;
    double min_delta = 1e-4;
};

struct TrainConfig
{
    int batch_size = 32;
    int max_epochs = 500;
    AdamConfig adam;
    EarlyStopConfig early_stop;
    std::uint64_t seed = 0;
    /// Regress standardised targets and map predictions back to metres.
    bool normalize_labels = false;
};

struct TrainingLog
{
    std::vector<double> epoch_loss; // mean training MSE seen during each epoch
    int best_epoch = -1;            // 0-based index into epoch_loss
    bool stopped_early = false;
};

struct MlpModel
{
    MlpArchitecture architecture;
    std::vector<DenseLayer> layers;
    TrainingLog training_log;
    /// Input statistics the model was trained with, if any.
    std::optional<NormStats> input_norm;
    /// Target statistics when trained with normalize_labels.
    std::optional<NormStats> label_norm;
    std::vector<std::string> feature_names;

    std::size_t parameter_count() const;
};

using Gradients = std::vector<DenseLayer>;

/// Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), biases zero.
MlpModel init_model(const MlpArchitecture &architecture, std::uint64_t seed);

/// batch: rows x input_dim -> rows x output_dim.
Eigen::MatrixXd forward(const MlpModel &model, const Eigen::MatrixXd &batch);

/// Mean over all entries of the squared difference.
double loss_mse(const Eigen::MatrixXd &prediction, const Eigen::MatrixXd &target);

/// Exact gradient of loss_mse(forward(model, batch), target).
Gradients backward(const MlpModel &model, const Eigen::MatrixXd &batch, const Eigen::MatrixXd &target);

/// Mini-batch Adam on already-normalised features with labels in metres.
/// Stops after max_epochs or when the epoch training loss has not improved by
/// min_delta for `patience` epochs, and returns the lowest-loss parameters.
MlpModel train(MlpModel model, const Eigen::MatrixXd &features, const Eigen::MatrixXd &labels,
               const TrainConfig &config);

/// Normalises raw features with `stats`, runs the network, and returns (X, Y)
/// in metres. Throws MlpError if the column count disagrees with the model.
Eigen::MatrixXd predict(const MlpModel &model, const Eigen::MatrixXd &features, const NormStats &stats);
/// Same, using the model's stored input statistics.
Eigen::MatrixXd predict(const MlpModel &model, const Eigen::MatrixXd &features);

nlohmann::json model_to_json(const MlpModel &model);
MlpModel model_from_json(const nlohmann::json &j);

} // namespace beamloc

#endif // BEAMLOC_MLP_HPP
