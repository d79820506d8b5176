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

#ifndef BEAMLOC_DTREE_HPP
#define BEAMLOC_DTREE_HPP

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace beamloc
{

class TreeError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct TreeConfig
{
    std::optional<int> max_depth; // unlimited when empty
    int min_samples_leaf = 1;
    int min_samples_split = 2;
};

/// Flattened node. Internal nodes route a row left iff
/// row[feature] <= threshold; leaves predict the mean of their members' labels.
struct TreeNode
{
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    Eigen::Vector2d value = Eigen::Vector2d::Zero();
    std::size_t count = 0;
    double gain = 0.0; // reduction in summed squared label deviation

    bool is_leaf() const { return feature < 0; }
};

struct RegressionTree
{
    std::vector<TreeNode> nodes; // nodes[0] is the root
    int n_features = 0;

    std::size_t leaf_count() const;
    int depth() const;
};

/// Candidate split of a node's rows.
struct SplitChoice
{
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

/// Ordering used for split selection: larger gain wins unless the two gains
/// agree to a relative 1e-9, in which case the lower (feature, threshold) wins.
bool split_preferred(const SplitChoice &candidate, const SplitChoice &incumbent);

/// Best greedy split of the given rows, or nullopt when none satisfies
/// min_samples_leaf or every feature is constant.
std::optional<SplitChoice> best_split(const Eigen::MatrixXd &features, const Eigen::MatrixXd &labels,
                                      const std::vector<std::size_t> &rows, int min_samples_leaf);

/// CART regression on two outputs; impurity is the per-output variance summed
/// over X and Y, thresholds are midpoints between consecutive distinct values.
RegressionTree fit_tree(const Eigen::MatrixXd &features, const Eigen::MatrixXd &labels, const TreeConfig &config);

Eigen::MatrixXd predict_tree(const RegressionTree &tree, const Eigen::MatrixXd &features);

nlohmann::json tree_to_json(const RegressionTree &tree);
RegressionTree tree_from_json(const nlohmann::json &j);

} // namespace beamloc

#endif // BEAMLOC_DTREE_HPP
