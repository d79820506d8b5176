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

#include "beamloc/eval.hpp"

#include "beamloc/io.hpp"
#include "beamloc/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace beamloc
{

std::vector<double> euclidean_errors(const Eigen::MatrixXd &prediction, const Eigen::MatrixXd &truth)
{
    if (prediction.rows() != truth.rows() || prediction.cols() != 2 || truth.cols() != 2)
    {
        throw EvalError("euclidean_errors: prediction and truth must both be (n x 2)");
    }
    std::vector<double> out(static_cast<std::size_t>(prediction.rows()));
    for (Eigen::Index r = 0; r < prediction.rows(); ++r)
    {
        out[static_cast<std::size_t>(r)] =
            std::hypot(prediction(r, 0) - truth(r, 0), prediction(r, 1) - truth(r, 1));
    }
    return out;
}

ErrorStats error_stats(std::vector<double> errors)
{
    if (errors.empty())
    {
        throw EvalError("error_stats: empty error list");
    }
    ErrorStats s;
    s.n = errors.size();
    const auto n = static_cast<double>(s.n);
    double sum = 0.0;
    for (double x : errors)
    {
        sum += x;
    }
    s.mean = sum / n;
    double sq = 0.0;
    for (double x : errors)
    {
        sq += (x - s.mean) * (x - s.mean);
    }
    s.std = std::sqrt(sq / n);
    s.errors = std::move(errors);
    return s;
}

std::vector<CdfPoint> error_cdf(std::vector<double> errors)
{
    if (errors.empty())
    {
        throw EvalError("error_cdf: empty error list");
    }
    std::sort(errors.begin(), errors.end());
    const auto n = static_cast<double>(errors.size());
    std::vector<CdfPoint> cdf;
    for (std::size_t i = 0; i < errors.size(); ++i)
    {
        if (i + 1 < errors.size() && errors[i + 1] == errors[i])
        {
            continue;
        }
        cdf.push_back({errors[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

double percentile(std::vector<double> errors, double p)
{
    if (errors.empty())
    {
        throw EvalError("percentile: empty error list");
    }
    if (!(p > 0.0 && p <= 100.0))
    {
        throw EvalError("percentile: p must lie in (0, 100]");
    }
    std::sort(errors.begin(), errors.end());
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(errors.size())));
    rank = std::clamp<std::size_t>(rank, 1, errors.size());
    return errors[rank - 1];
}

std::string to_string(Topology t)
{
    return t == Topology::network_level ? "network_level" : "cell_specific";
}

std::string to_string(ModelKind m)
{
    return m == ModelKind::mlp ? "mlp" : "dtree";
}

Topology topology_from_string(const std::string &s)
{
    if (s == "network_level")
    {
        return Topology::network_level;
    }
    if (s == "cell_specific")
    {
        return Topology::cell_specific;
    }
    throw EvalError("unknown topology '" + s + "'");
}

ModelKind model_kind_from_string(const std::string &s)
{
    if (s == "mlp")
    {
        return ModelKind::mlp;
    }
    if (s == "dtree")
    {
        return ModelKind::dtree;
    }
    throw EvalError("unknown model kind '" + s + "'");
}

namespace
{

struct FitOutcome
{
    Eigen::MatrixXd train_pred;
    Eigen::MatrixXd test_pred;
    int epochs = 0;
    std::string architecture;
};

FitOutcome fit_and_predict(const Dataset &ds, const ExperimentDescriptor &d, std::uint64_t init_seed,
                           std::uint64_t shuffle_seed)
{
    FitOutcome out;
    const Eigen::MatrixXd x_train = ds.select_features(ds.train_rows);
    const Eigen::MatrixXd y_train = ds.select_labels(ds.train_rows);
    const Eigen::MatrixXd x_test = ds.select_features(ds.test_rows);
    if (d.model == ModelKind::dtree)
    {
        const auto tree = fit_tree(x_train, y_train, d.tree);
        out.train_pred = predict_tree(tree, x_train);
        out.test_pred = x_test.rows() > 0 ? predict_tree(tree, x_test) : Eigen::MatrixXd(0, 2);
        out.architecture =
            "dtree depth=" + std::to_string(tree.depth()) + " leaves=" + std::to_string(tree.leaf_count());
        return out;
    }
    MlpArchitecture arch;
    arch.input_dim = static_cast<int>(ds.features.cols());
    arch.hidden_layers = d.hidden_layers;
    auto model = init_model(arch, init_seed);
    model.input_norm = ds.norm;
    model.feature_names = layout_names(ds.layout);
    TrainConfig tc = d.train;
    tc.seed = shuffle_seed;
    model = train(std::move(model), normalize(ds.norm, x_train), y_train, tc);
    out.train_pred = predict(model, x_train);
    out.test_pred = x_test.rows() > 0 ? predict(model, x_test) : Eigen::MatrixXd(0, 2);
    out.epochs = static_cast<int>(model.training_log.epoch_loss.size());
    out.architecture = arch.summary();
    return out;
}

void check_compatible(const Dataset &pooled, const ExperimentDescriptor &d)
{
    const auto &a = pooled.config;
    const auto &b = d.features;
    if (a.name != b.name || a.n_serving_beams != b.n_serving_beams || a.n_neighbor_cells != b.n_neighbor_cells ||
        a.id_encoding != b.id_encoding)
    {
        throw EvalError("experiment '" + d.id + "' references feature set '" + b.name +
                        "' which the dataset does not provide (dataset has '" + a.name + "')");
    }
    if (d.topology == Topology::network_level && a.include_serving_cell_id != b.include_serving_cell_id)
    {
        throw EvalError("experiment '" + d.id + "': serving-cell-id inclusion differs from the dataset");
    }
}

} // namespace

EvalReport run_experiment(const Dataset &pooled, const ExperimentDescriptor &d)
{
    check_compatible(pooled, d);
    if (pooled.train_rows.empty() || pooled.test_rows.empty())
    {
        throw EvalError("experiment '" + d.id + "': dataset has an empty train or test split");
    }

    EvalReport rep;
    rep.experiment_id = d.id;
    rep.feature_config = d.features;
    rep.topology = d.topology;
    rep.model_kind = d.model;
    rep.replica = d.replica;
    rep.split_seed = pooled.split_seed;
    rep.init_seed = d.init_seed;
    rep.shuffle_seed = d.train.seed;

    const Eigen::RowVector2d centroid = pooled.select_labels(pooled.train_rows).colwise().mean();

    std::vector<double> train_errors;
    std::vector<double> test_errors;
    Eigen::MatrixXd test_truth;

    if (d.topology == Topology::network_level)
    {
        auto fit = fit_and_predict(pooled, d, d.init_seed, d.train.seed);
        train_errors = euclidean_errors(fit.train_pred, pooled.select_labels(pooled.train_rows));
        test_truth = pooled.select_labels(pooled.test_rows);
        test_errors = euclidean_errors(fit.test_pred, test_truth);
        rep.architecture = fit.architecture;
        rep.epochs = fit.epochs;
    }
    else
    {
        auto partition = partition_by_cell(pooled, d.min_cell_rows);
        rep.skipped_cells = partition.skipped;
        if (partition.cells.empty())
        {
            throw EvalError("experiment '" + d.id + "': every cell fell below the minimum row count");
        }
        std::vector<Eigen::RowVector2d> truth_rows;
        for (const auto &[cell, ds] : partition.cells)
        {
            const auto key = static_cast<std::uint64_t>(cell);
            auto fit = fit_and_predict(ds, d, splitmix64(d.init_seed ^ key), splitmix64(d.train.seed ^ key));
            CellResult cr;
            cr.cell_id = cell;
            cr.epochs = fit.epochs;
            auto tr = euclidean_errors(fit.train_pred, ds.select_labels(ds.train_rows));
            train_errors.insert(train_errors.end(), tr.begin(), tr.end());
            cr.train = error_stats(std::move(tr));
            if (!ds.test_rows.empty())
            {
                const Eigen::MatrixXd truth = ds.select_labels(ds.test_rows);
                auto te = euclidean_errors(fit.test_pred, truth);
                test_errors.insert(test_errors.end(), te.begin(), te.end());
                for (Eigen::Index r = 0; r < truth.rows(); ++r)
                {
                    truth_rows.emplace_back(truth.row(r));
                }
                cr.test = error_stats(std::move(te));
            }
            rep.per_cell.push_back(std::move(cr));
            if (rep.architecture.empty())
            {
                rep.architecture = fit.architecture;
            }
        }
        test_truth.resize(static_cast<Eigen::Index>(truth_rows.size()), 2);
        for (std::size_t i = 0; i < truth_rows.size(); ++i)
        {
            test_truth.row(static_cast<Eigen::Index>(i)) = truth_rows[i];
        }
        if (d.model == ModelKind::dtree)
        {
            rep.architecture = "dtree per-cell";
        }
    }
    if (test_errors.empty())
    {
        throw EvalError("experiment '" + d.id + "': no test rows were evaluated");
    }

    const Eigen::MatrixXd centroid_pred = centroid.replicate(test_truth.rows(), 1);
    rep.centroid_test = error_stats(euclidean_errors(centroid_pred, test_truth));
    rep.train = error_stats(std::move(train_errors));
    rep.test = error_stats(std::move(test_errors));
    rep.cdf = error_cdf(rep.test.errors);
    for (int p : {50, 80, 90})
    {
        rep.percentiles[p] = percentile(rep.test.errors, p);
    }
    return rep;
}

DatasetCache::DatasetCache(std::shared_ptr<const SampleSet> samples, double split_fraction)
    : m_samples(std::move(samples)), m_split_fraction(split_fraction)
{
}

const Dataset &DatasetCache::get(const FeatureConfig &features, std::uint64_t split_seed)
{
    std::lock_guard lock(m_mutex);
    auto key = std::make_pair(features.name, split_seed);
    auto it = m_datasets.find(key);
    if (it == m_datasets.end())
    {
        FeatureConfig pooled = features;
        auto ds = std::make_unique<Dataset>(build_dataset(*m_samples, pooled, m_split_fraction, split_seed));
        it = m_datasets.emplace(key, std::move(ds)).first;
    }
    return *it->second;
}

std::vector<ExperimentOutcome> run_matrix(const std::vector<ExperimentDescriptor> &matrix, DatasetCache &cache,
                                          unsigned jobs)
{
    std::vector<ExperimentOutcome> outcomes(matrix.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < matrix.size(); i = next++)
        {
            const auto &d = matrix[i];
            outcomes[i].experiment_id = d.id;
            try
            {
                const auto &ds = cache.get(d.features, d.split_seed);
                outcomes[i].report = run_experiment(ds, d);
            }
            catch (const std::exception &e)
            {
                outcomes[i].error = e.what();
            }
        }
    };
    const unsigned n = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(matrix.size())));
    if (n <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t)
        {
            pool.emplace_back(worker);
        }
    }
    return outcomes;
}

namespace
{

nlohmann::json stats_json(const ErrorStats &s)
{
    return {{"mean", s.mean}, {"std", s.std}, {"n", s.n}};
}

} // namespace

nlohmann::json report_to_json(const EvalReport &r)
{
    using nlohmann::json;
    json j;
    j["experiment_id"] = r.experiment_id;
    j["feature_config"] = to_json(r.feature_config);
    j["training_topology"] = to_string(r.topology);
    j["model_kind"] = to_string(r.model_kind);
    j["architecture"] = r.architecture;
    j["replica"] = r.replica;
    j["seeds"] = {{"split", r.split_seed}, {"init", r.init_seed}, {"shuffle", r.shuffle_seed}};
    j["train"] = stats_json(r.train);
    j["test"] = stats_json(r.test);
    j["centroid_test"] = stats_json(r.centroid_test);
    json pct = json::object();
    for (const auto &[p, v] : r.percentiles)
    {
        pct["p" + std::to_string(p)] = v;
    }
    j["percentiles"] = pct;
    json cells = json::array();
    for (const auto &c : r.per_cell)
    {
        cells.push_back({{"cell_id", c.cell_id}, {"train", stats_json(c.train)}, {"test", stats_json(c.test)},
                         {"epochs", c.epochs}});
    }
    j["per_cell"] = cells;
    json skipped = json::array();
    for (const auto &[cell, n] : r.skipped_cells)
    {
        skipped.push_back({{"cell_id", cell}, {"rows", n}});
    }
    j["skipped_cells"] = skipped;
    j["epochs"] = r.epochs;
    json cdf = json::array();
    for (const auto &p : r.cdf)
    {
        cdf.push_back({p.value, p.fraction});
    }
    j["cdf"] = cdf;
    return j;
}

std::string cdf_csv(const EvalReport &report)
{
    std::string out = "error_m,cumulative_fraction\n";
    for (const auto &p : report.cdf)
    {
        out += format_double(p.value) + "," + format_double(p.fraction) + "\n";
    }
    return out;
}

std::string comparison_csv(const std::vector<ExperimentOutcome> &outcomes)
{
    std::ostringstream out;
    out << "experiment_id,feature_set,n_serving_beams,n_neighbor_cells,hidden_layers,topology,model,architecture,"
           "replica,train_mean_m,train_std_m,test_mean_m,test_std_m,p50_m,p80_m,p90_m,centroid_test_mean_m\n";
    for (const auto &o : outcomes)
    {
        if (!o.report)
        {
            continue;
        }
        const auto &r = *o.report;
        const auto &f = r.feature_config;
        std::string hidden = r.model_kind == ModelKind::mlp ? std::string() : "-";
        if (r.model_kind == ModelKind::mlp)
        {
            // architecture is input-h1-...-output; keep the hidden part
            const auto first = r.architecture.find('-');
            const auto last = r.architecture.rfind('-');
            hidden = first == last ? "" : r.architecture.substr(first + 1, last - first - 1);
        }
        out << r.experiment_id << ',' << f.name << ',' << f.n_serving_beams << ',' << f.n_neighbor_cells << ','
            << hidden << ',' << to_string(r.topology) << ',' << to_string(r.model_kind) << ',' << r.architecture
            << ',' << r.replica << ',' << format_double(r.train.mean) << ',' << format_double(r.train.std) << ','
            << format_double(r.test.mean) << ',' << format_double(r.test.std) << ','
            << format_double(r.percentiles.at(50)) << ',' << format_double(r.percentiles.at(80)) << ','
            << format_double(r.percentiles.at(90)) << ',' << format_double(r.centroid_test.mean) << '\n';
    }
    return out.str();
}

} // namespace beamloc
