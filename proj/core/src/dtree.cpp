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

#include "beamloc/dtree.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace beamloc
{

std::size_t RegressionTree::leaf_count() const
{
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const TreeNode &n) { return n.is_leaf(); }));
}

int RegressionTree::depth() const
{
    if (nodes.empty())
    {
        return 0;
    }
    int deepest = 0;
    std::vector<std::pair<int, int>> stack{{0, 0}};
    while (!stack.empty())
    {
        auto [id, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        const auto &n = nodes[static_cast<std::size_t>(id)];
        if (!n.is_leaf())
        {
            stack.emplace_back(n.left, d + 1);
            stack.emplace_back(n.right, d + 1);
        }
    }
    return deepest;
}

bool split_preferred(const SplitChoice &candidate, const SplitChoice &incumbent)
{
    if (incumbent.feature < 0)
    {
        return true;
    }
    const double tol = 1e-9 * std::max({1.0, std::abs(candidate.gain), std::abs(incumbent.gain)});
    if (candidate.gain > incumbent.gain + tol)
    {
        return true;
    }
    if (candidate.gain < incumbent.gain - tol)
    {
        return false;
    }
    if (candidate.feature != incumbent.feature)
    {
        return candidate.feature < incumbent.feature;
    }
    return candidate.threshold < incumbent.threshold;
}

std::optional<SplitChoice> best_split(const Eigen::MatrixXd &features, const Eigen::MatrixXd &labels,
                                      const std::vector<std::size_t> &rows, int min_samples_leaf)
{
    const std::size_t n = rows.size();
    const auto min_leaf = static_cast<std::size_t>(std::max(1, min_samples_leaf));
    if (n < 2 * min_leaf)
    {
        return std::nullopt;
    }
    Eigen::Vector2d total = Eigen::Vector2d::Zero();
    for (auto r : rows)
    {
        total += labels.row(static_cast<Eigen::Index>(r)).transpose();
    }

    SplitChoice best;
    std::vector<std::size_t> sorted = rows;
    for (Eigen::Index f = 0; f < features.cols(); ++f)
    {
        std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
            return features(static_cast<Eigen::Index>(a), f) < features(static_cast<Eigen::Index>(b), f);
        });
        Eigen::Vector2d left_sum = Eigen::Vector2d::Zero();
        for (std::size_t i = 1; i < n; ++i)
        {
            left_sum += labels.row(static_cast<Eigen::Index>(sorted[i - 1])).transpose();
            const double lo = features(static_cast<Eigen::Index>(sorted[i - 1]), f);
            const double hi = features(static_cast<Eigen::Index>(sorted[i]), f);
            if (!(lo < hi) || i < min_leaf || n - i < min_leaf)
            {
                continue;
            }
            const auto nl = static_cast<double>(i);
            const auto nr = static_cast<double>(n - i);
            // SSE(parent) - SSE(left) - SSE(right) = nl*nr/n * |mean_l - mean_r|^2
            const Eigen::Vector2d diff = left_sum / nl - (total - left_sum) / nr;
            SplitChoice cand;
            cand.feature = static_cast<int>(f);
            cand.threshold = 0.5 * (lo + hi);
            if (!(cand.threshold < hi))
            {
                cand.threshold = lo;
            }
            cand.gain = nl * nr / static_cast<double>(n) * diff.squaredNorm();
            if (split_preferred(cand, best))
            {
                best = cand;
            }
        }
    }
    if (best.feature < 0)
    {
        return std::nullopt;
    }
    return best;
}

namespace
{

bool labels_constant(const Eigen::MatrixXd &labels, const std::vector<std::size_t> &rows)
{
    const Eigen::RowVectorXd first = labels.row(static_cast<Eigen::Index>(rows.front()));
    return std::all_of(rows.begin(), rows.end(),
                       [&](std::size_t r) { return labels.row(static_cast<Eigen::Index>(r)) == first; });
}

} // namespace

RegressionTree fit_tree(const Eigen::MatrixXd &features, const Eigen::MatrixXd &labels, const TreeConfig &config)
{
    if (features.rows() == 0)
    {
        throw TreeError("fit_tree: empty input");
    }
    if (labels.rows() != features.rows() || labels.cols() != 2)
    {
        throw TreeError("fit_tree: labels must be (rows x 2) matching the features");
    }
    if (config.min_samples_split < 2 || config.min_samples_leaf < 1)
    {
        throw TreeError("fit_tree: min_samples_split must be >= 2 and min_samples_leaf >= 1");
    }

    RegressionTree tree;
    tree.n_features = static_cast<int>(features.cols());

    struct Pending
    {
        int node;
        int depth;
        std::vector<std::size_t> rows;
    };
    std::vector<std::size_t> all(static_cast<std::size_t>(features.rows()));
    std::iota(all.begin(), all.end(), 0);
    tree.nodes.emplace_back();
    std::vector<Pending> stack;
    stack.push_back({0, 0, std::move(all)});

    while (!stack.empty())
    {
        Pending p = std::move(stack.back());
        stack.pop_back();

        Eigen::Vector2d mean = Eigen::Vector2d::Zero();
        for (auto r : p.rows)
        {
            mean += labels.row(static_cast<Eigen::Index>(r)).transpose();
        }
        mean /= static_cast<double>(p.rows.size());
        {
            auto &node = tree.nodes[static_cast<std::size_t>(p.node)];
            node.value = mean;
            node.count = p.rows.size();
        }

        const bool depth_ok = !config.max_depth || p.depth < *config.max_depth;
        if (!depth_ok || p.rows.size() < static_cast<std::size_t>(config.min_samples_split) ||
            labels_constant(labels, p.rows))
        {
            continue;
        }
        const auto split = best_split(features, labels, p.rows, config.min_samples_leaf);
        if (!split)
        {
            continue;
        }

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        for (auto r : p.rows)
        {
            (features(static_cast<Eigen::Index>(r), split->feature) <= split->threshold ? left_rows : right_rows)
                .push_back(r);
        }
        const int left_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        const int right_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        auto &node = tree.nodes[static_cast<std::size_t>(p.node)];
        node.feature = split->feature;
        node.threshold = split->threshold;
        node.gain = split->gain;
        node.left = left_id;
        node.right = right_id;
        stack.push_back({right_id, p.depth + 1, std::move(right_rows)});
        stack.push_back({left_id, p.depth + 1, std::move(left_rows)});
    }
    return tree;
}

Eigen::MatrixXd predict_tree(const RegressionTree &tree, const Eigen::MatrixXd &features)
{
    if (features.cols() != tree.n_features)
    {
        throw TreeError("predict_tree: expected " + std::to_string(tree.n_features) + " features, got " +
                        std::to_string(features.cols()));
    }
    if (tree.nodes.empty())
    {
        throw TreeError("predict_tree: empty tree");
    }
    Eigen::MatrixXd out(features.rows(), 2);
    for (Eigen::Index r = 0; r < features.rows(); ++r)
    {
        const TreeNode *node = &tree.nodes.front();
        while (!node->is_leaf())
        {
            const int next = features(r, node->feature) <= node->threshold ? node->left : node->right;
            node = &tree.nodes[static_cast<std::size_t>(next)];
        }
        out.row(r) = node->value.transpose();
    }
    return out;
}

namespace
{

nlohmann::json node_to_json(const RegressionTree &tree, int id)
{
    const auto &n = tree.nodes[static_cast<std::size_t>(id)];
    if (n.is_leaf())
    {
        return {{"value", {n.value.x(), n.value.y()}}, {"count", n.count}};
    }
    return {{"feature", n.feature},
            {"threshold", n.threshold},
            {"gain", n.gain},
            {"value", {n.value.x(), n.value.y()}},
            {"count", n.count},
            {"left", node_to_json(tree, n.left)},
            {"right", node_to_json(tree, n.right)}};
}

int node_from_json(const nlohmann::json &j, RegressionTree &tree)
{
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    TreeNode n;
    const auto v = j.at("value").get<std::vector<double>>();
    if (v.size() != 2)
    {
        throw TreeError("tree json: node value must have two entries");
    }
    n.value = {v[0], v[1]};
    n.count = j.at("count").get<std::size_t>();
    if (j.contains("feature"))
    {
        n.feature = j.at("feature").get<int>();
        if (n.feature < 0 || n.feature >= tree.n_features)
        {
            throw TreeError("tree json: feature index out of range");
        }
        n.threshold = j.at("threshold").get<double>();
        n.gain = j.at("gain").get<double>();
        n.left = node_from_json(j.at("left"), tree);
        n.right = node_from_json(j.at("right"), tree);
    }
    tree.nodes[static_cast<std::size_t>(id)] = n;
    return id;
}

} // namespace

nlohmann::json tree_to_json(const RegressionTree &tree)
{
    if (tree.nodes.empty())
    {
        throw TreeError("tree_to_json: empty tree");
    }
    return {{"n_features", tree.n_features}, {"root", node_to_json(tree, 0)}};
}

RegressionTree tree_from_json(const nlohmann::json &j)
{
    try
    {
        RegressionTree tree;
        tree.n_features = j.at("n_features").get<int>();
        node_from_json(j.at("root"), tree);
        return tree;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw TreeError(std::string("tree json: ") + e.what());
    }
}

} // namespace beamloc
