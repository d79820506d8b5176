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

#include "beamloc/mlp.hpp"

#include "beamloc/random.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <numeric>

namespace beamloc
{

std::string MlpArchitecture::summary() const
{
    std::string s = std::to_string(input_dim);
    for (int h : hidden_layers)
    {
        s += "-" + std::to_string(h);
    }
    return s + "-" + std::to_string(output_dim);
}

std::size_t MlpModel::parameter_count() const
{
    std::size_t n = 0;
    for (const auto &l : layers)
    {
        n += static_cast<std::size_t>(l.weights.size() + l.bias.size());
    }
    return n;
}

MlpModel init_model(const MlpArchitecture &architecture, std::uint64_t seed)
{
    std::vector<int> dims{architecture.input_dim};
    dims.insert(dims.end(), architecture.hidden_layers.begin(), architecture.hidden_layers.end());
    dims.push_back(architecture.output_dim);
    for (int d : dims)
    {
        if (d < 1)
        {
            throw MlpError("init_model: every layer dimension must be >= 1 (" + architecture.summary() + ")");
        }
    }

    MlpModel model;
    model.architecture = architecture;
    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l)
    {
        DenseLayer layer;
        layer.weights.resize(dims[l + 1], dims[l]);
        layer.bias = Eigen::VectorXd::Zero(dims[l + 1]);
        const double scale = 1.0 / std::sqrt(static_cast<double>(dims[l]));
        // row-major draw order so the stream does not depend on Eigen storage
        for (Eigen::Index r = 0; r < layer.weights.rows(); ++r)
        {
            for (Eigen::Index c = 0; c < layer.weights.cols(); ++c)
            {
                layer.weights(r, c) = rng.uniform(-scale, scale);
            }
        }
        model.layers.push_back(std::move(layer));
    }
    return model;
}

namespace
{

void apply(Activation act, Eigen::MatrixXd &z)
{
    if (act == Activation::tanh)
    {
        z = z.array().tanh();
    }
}

// Derivative expressed through the activation output.
void scale_by_derivative(Activation act, const Eigen::MatrixXd &activated, Eigen::MatrixXd &delta)
{
    if (act == Activation::tanh)
    {
        delta.array() *= 1.0 - activated.array().square();
    }
}

Activation activation_of(const MlpModel &model, std::size_t layer)
{
    return layer + 1 == model.layers.size() ? model.architecture.output_activation
                                            : model.architecture.hidden_activation;
}

// Column-major workspace: activations[l] is (width_l x batch).
struct Workspace
{
    std::vector<Eigen::MatrixXd> activations;
    std::vector<Eigen::MatrixXd> deltas;
};

void forward_columns(const MlpModel &model, const Eigen::MatrixXd &input_t, Workspace &ws)
{
    ws.activations.resize(model.layers.size() + 1);
    ws.activations[0] = input_t;
    for (std::size_t l = 0; l < model.layers.size(); ++l)
    {
        auto &z = ws.activations[l + 1];
        z.noalias() = model.layers[l].weights * ws.activations[l];
        z.colwise() += model.layers[l].bias;
        apply(activation_of(model, l), z);
    }
}

// Accumulates gradients of the mean squared error over (outputs x batch).
void backward_columns(const MlpModel &model, const Eigen::MatrixXd &target_t, Workspace &ws, Gradients &grads)
{
    const std::size_t n_layers = model.layers.size();
    const double scale = 2.0 / static_cast<double>(target_t.size());
    ws.deltas.resize(n_layers);
    ws.deltas[n_layers - 1] = scale * (ws.activations[n_layers] - target_t);
    for (std::size_t l = n_layers; l-- > 0;)
    {
        auto &delta = ws.deltas[l];
        scale_by_derivative(activation_of(model, l), ws.activations[l + 1], delta);
        grads[l].weights.noalias() = delta * ws.activations[l].transpose();
        grads[l].bias = delta.rowwise().sum();
        if (l > 0)
        {
            ws.deltas[l - 1].noalias() = model.layers[l].weights.transpose() * delta;
        }
    }
}

Gradients zero_like(const MlpModel &model)
{
    Gradients g;
    for (const auto &l : model.layers)
    {
        g.push_back({Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()), Eigen::VectorXd::Zero(l.bias.size())});
    }
    return g;
}

void check_input(const MlpModel &model, const Eigen::MatrixXd &batch, const char *where)
{
    if (batch.cols() != model.architecture.input_dim)
    {
        throw MlpError(std::string(where) + ": expected " + std::to_string(model.architecture.input_dim) +
                       " input columns, got " + std::to_string(batch.cols()));
    }
}

void check_target(const MlpModel &model, const Eigen::MatrixXd &batch, const Eigen::MatrixXd &target,
                  const char *where)
{
    if (target.rows() != batch.rows() || target.cols() != model.architecture.output_dim)
    {
        throw MlpError(std::string(where) + ": target shape does not match batch/output");
    }
}

} // namespace

Eigen::MatrixXd forward(const MlpModel &model, const Eigen::MatrixXd &batch)
{
    check_input(model, batch, "forward");
    Workspace ws;
    forward_columns(model, batch.transpose(), ws);
    return ws.activations.back().transpose();
}

double loss_mse(const Eigen::MatrixXd &prediction, const Eigen::MatrixXd &target)
{
    if (prediction.rows() != target.rows() || prediction.cols() != target.cols())
    {
        throw MlpError("loss_mse: shape mismatch");
    }
    if (prediction.size() == 0)
    {
        return 0.0;
    }
    return (prediction - target).squaredNorm() / static_cast<double>(prediction.size());
}

Gradients backward(const MlpModel &model, const Eigen::MatrixXd &batch, const Eigen::MatrixXd &target)
{
    check_input(model, batch, "backward");
    check_target(model, batch, target, "backward");
    Workspace ws;
    forward_columns(model, batch.transpose(), ws);
    Gradients grads = zero_like(model);
    backward_columns(model, target.transpose(), ws, grads);
    return grads;
}

MlpModel train(MlpModel model, const Eigen::MatrixXd &features, const Eigen::MatrixXd &labels,
               const TrainConfig &config)
{
    if (features.rows() == 0)
    {
        throw MlpError("train: empty training set");
    }
    check_input(model, features, "train");
    check_target(model, features, labels, "train");
    if (config.batch_size < 1 || config.early_stop.patience < 1 || config.max_epochs < 0)
    {
        throw MlpError("train: batch_size and patience must be >= 1");
    }

    Eigen::MatrixXd target = labels;
    if (config.normalize_labels)
    {
        model.label_norm = NormStats::compute(labels);
        target = normalize(*model.label_norm, labels);
    }
    else
    {
        model.label_norm.reset();
    }
    const Eigen::MatrixXd x_t = features.transpose();
    const Eigen::MatrixXd y_t = target.transpose();
    const auto n = static_cast<std::size_t>(features.rows());
    const auto batch = static_cast<std::size_t>(config.batch_size);

    Gradients first = zero_like(model);
    Gradients second = zero_like(model);
    Gradients grads = zero_like(model);
    Workspace ws;
    Eigen::MatrixXd xb;
    Eigen::MatrixXd yb;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(config.seed);

    const auto &adam = config.adam;
    double beta1_t = 1.0;
    double beta2_t = 1.0;

    std::vector<DenseLayer> best_layers = model.layers;
    double lowest = std::numeric_limits<double>::infinity();
    double reference = std::numeric_limits<double>::infinity();
    int wait = 0;
    model.training_log = {};

    for (int epoch = 0; epoch < config.max_epochs; ++epoch)
    {
        rng.shuffle(order);
        double loss_sum = 0.0;
        for (std::size_t start = 0; start < n; start += batch)
        {
            const std::size_t m = std::min(batch, n - start);
            xb.resize(x_t.rows(), static_cast<Eigen::Index>(m));
            yb.resize(y_t.rows(), static_cast<Eigen::Index>(m));
            for (std::size_t i = 0; i < m; ++i)
            {
                xb.col(static_cast<Eigen::Index>(i)) = x_t.col(static_cast<Eigen::Index>(order[start + i]));
                yb.col(static_cast<Eigen::Index>(i)) = y_t.col(static_cast<Eigen::Index>(order[start + i]));
            }
            forward_columns(model, xb, ws);
            loss_sum += (ws.activations.back() - yb).squaredNorm() / static_cast<double>(yb.rows());
            backward_columns(model, yb, ws, grads);

            beta1_t *= adam.beta1;
            beta2_t *= adam.beta2;
            const double c1 = 1.0 / (1.0 - beta1_t);
            const double c2 = 1.0 / (1.0 - beta2_t);
            for (std::size_t l = 0; l < model.layers.size(); ++l)
            {
                auto step = [&](auto &param, auto &g, auto &m1, auto &m2) {
                    m1 = adam.beta1 * m1 + (1.0 - adam.beta1) * g;
                    m2 = adam.beta2 * m2 + (1.0 - adam.beta2) * g.cwiseProduct(g);
                    param.array() -=
                        adam.learning_rate * (m1.array() * c1) / ((m2.array() * c2).sqrt() + adam.epsilon);
                };
                step(model.layers[l].weights, grads[l].weights, first[l].weights, second[l].weights);
                step(model.layers[l].bias, grads[l].bias, first[l].bias, second[l].bias);
            }
        }
        const double epoch_loss = loss_sum / static_cast<double>(n);
        model.training_log.epoch_loss.push_back(epoch_loss);

        if (epoch_loss < lowest)
        {
            lowest = epoch_loss;
            best_layers = model.layers;
            model.training_log.best_epoch = epoch;
        }
        if (epoch_loss < reference - config.early_stop.min_delta)
        {
            reference = epoch_loss;
            wait = 0;
        }
        else if (++wait >= config.early_stop.patience)
        {
            model.training_log.stopped_early = true;
            break;
        }
    }
    if (model.training_log.best_epoch >= 0)
    {
        model.layers = std::move(best_layers);
    }
    return model;
}

Eigen::MatrixXd predict(const MlpModel &model, const Eigen::MatrixXd &features, const NormStats &stats)
{
    check_input(model, features, "predict");
    if (stats.size() != features.cols())
    {
        throw MlpError("predict: normalisation statistics do not match the feature layout");
    }
    Eigen::MatrixXd out = forward(model, normalize(stats, features));
    if (model.label_norm)
    {
        out = denormalize(*model.label_norm, out);
    }
    return out;
}

Eigen::MatrixXd predict(const MlpModel &model, const Eigen::MatrixXd &features)
{
    if (!model.input_norm)
    {
        throw MlpError("predict: model carries no input statistics");
    }
    return predict(model, features, *model.input_norm);
}

namespace
{

std::string activation_name(Activation a)
{
    return a == Activation::tanh ? "tanh" : "linear";
}

Activation activation_from(const std::string &s)
{
    if (s == "tanh")
    {
        return Activation::tanh;
    }
    if (s == "linear")
    {
        return Activation::linear;
    }
    throw MlpError("unknown activation '" + s + "'");
}

nlohmann::json stats_json(const NormStats &s)
{
    return {{"mean", std::vector<double>(s.mean.data(), s.mean.data() + s.mean.size())},
            {"std", std::vector<double>(s.std.data(), s.std.data() + s.std.size())}};
}

NormStats stats_from(const nlohmann::json &j)
{
    const auto mean = j.at("mean").get<std::vector<double>>();
    const auto sd = j.at("std").get<std::vector<double>>();
    if (mean.size() != sd.size())
    {
        throw MlpError("model json: mean/std length mismatch");
    }
    NormStats s;
    s.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    s.std = Eigen::Map<const Eigen::VectorXd>(sd.data(), static_cast<Eigen::Index>(sd.size()));
    return s;
}

} // namespace

nlohmann::json model_to_json(const MlpModel &model)
{
    using nlohmann::json;
    const auto &a = model.architecture;
    json j;
    j["architecture"] = {{"input_dim", a.input_dim},
                         {"hidden_layers", a.hidden_layers},
                         {"output_dim", a.output_dim},
                         {"hidden_activation", activation_name(a.hidden_activation)},
                         {"output_activation", activation_name(a.output_activation)}};
    json layers = json::array();
    for (const auto &l : model.layers)
    {
        std::vector<double> w;
        w.reserve(static_cast<std::size_t>(l.weights.size()));
        for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
        {
            for (Eigen::Index c = 0; c < l.weights.cols(); ++c)
            {
                w.push_back(l.weights(r, c));
            }
        }
        layers.push_back({{"rows", l.weights.rows()},
                          {"cols", l.weights.cols()},
                          {"weights", w},
                          {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())}});
    }
    j["layers"] = std::move(layers);
    j["input_norm"] = model.input_norm ? stats_json(*model.input_norm) : json(nullptr);
    j["label_norm"] = model.label_norm ? stats_json(*model.label_norm) : json(nullptr);
    j["feature_names"] = model.feature_names;
    j["training_log"] = {{"epoch_loss", model.training_log.epoch_loss},
                         {"best_epoch", model.training_log.best_epoch},
                         {"stopped_early", model.training_log.stopped_early}};
    return j;
}

MlpModel model_from_json(const nlohmann::json &j)
{
    try
    {
        MlpModel m;
        const auto &a = j.at("architecture");
        m.architecture.input_dim = a.at("input_dim").get<int>();
        m.architecture.hidden_layers = a.at("hidden_layers").get<std::vector<int>>();
        m.architecture.output_dim = a.at("output_dim").get<int>();
        m.architecture.hidden_activation = activation_from(a.at("hidden_activation").get<std::string>());
        m.architecture.output_activation = activation_from(a.at("output_activation").get<std::string>());

        int prev = m.architecture.input_dim;
        std::vector<int> widths = m.architecture.hidden_layers;
        widths.push_back(m.architecture.output_dim);
        const auto &layers = j.at("layers");
        if (layers.size() != widths.size())
        {
            throw MlpError("model json: layer count does not match architecture");
        }
        for (std::size_t i = 0; i < layers.size(); ++i)
        {
            const auto &lj = layers[i];
            const auto rows = lj.at("rows").get<Eigen::Index>();
            const auto cols = lj.at("cols").get<Eigen::Index>();
            const auto w = lj.at("weights").get<std::vector<double>>();
            const auto b = lj.at("bias").get<std::vector<double>>();
            if (rows != widths[i] || cols != prev || static_cast<Eigen::Index>(w.size()) != rows * cols ||
                static_cast<Eigen::Index>(b.size()) != rows)
            {
                throw MlpError("model json: layer " + std::to_string(i) + " has inconsistent shape");
            }
            DenseLayer layer;
            layer.weights.resize(rows, cols);
            for (Eigen::Index r = 0; r < rows; ++r)
            {
                for (Eigen::Index c = 0; c < cols; ++c)
                {
                    layer.weights(r, c) = w[static_cast<std::size_t>(r * cols + c)];
                }
            }
            layer.bias = Eigen::Map<const Eigen::VectorXd>(b.data(), rows);
            m.layers.push_back(std::move(layer));
            prev = static_cast<int>(rows);
        }
        if (!j.at("input_norm").is_null())
        {
            m.input_norm = stats_from(j.at("input_norm"));
        }
        if (!j.at("label_norm").is_null())
        {
            m.label_norm = stats_from(j.at("label_norm"));
        }
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        const auto &log = j.at("training_log");
        m.training_log.epoch_loss = log.at("epoch_loss").get<std::vector<double>>();
        m.training_log.best_epoch = log.at("best_epoch").get<int>();
        m.training_log.stopped_early = log.at("stopped_early").get<bool>();
        return m;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw MlpError(std::string("model json: ") + e.what());
    }
}

} // namespace beamloc
