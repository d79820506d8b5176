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
#include "beamloc/random.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <numeric>

namespace beamloc
{
namespace
{

std::vector<std::size_t> all_rows(Eigen::Index n)
{
    std::vector<std::size_t> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
}

TEST(Tree, SingleSplitOnObviousFeature)
{
    Eigen::MatrixXd x(4, 2);
    x << 0, 5, 1, 5, 10, 5, 11, 5;
    Eigen::MatrixXd y(4, 2);
    y << 0, 0, 0, 0, 8, 8, 8, 8;
    const auto s = best_split(x, y, all_rows(4), 1);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->feature, 0);
    EXPECT_DOUBLE_EQ(s->threshold, 5.5);
    EXPECT_DOUBLE_EQ(s->gain, 2.0 * 2.0 / 4.0 * 128.0);
}

TEST(Tree, ConstantFeaturesGiveNoSplit)
{
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(5, 2);
    Eigen::MatrixXd y = Eigen::MatrixXd::Random(5, 2);
    EXPECT_FALSE(best_split(x, y, all_rows(5), 1).has_value());
    const auto tree = fit_tree(x, y, TreeConfig{});
    EXPECT_EQ(tree.nodes.size(), 1u);
    EXPECT_TRUE(tree.nodes[0].value.isApprox(y.colwise().mean().transpose()));
}

TEST(Tree, TiesPreferLowestFeatureThenThreshold)
{
    Eigen::MatrixXd x(4, 2);
    x << 0, 0, 0, 0, 1, 1, 1, 1;
    Eigen::MatrixXd y(4, 2);
    y << 0, 0, 0, 0, 1, 1, 1, 1;
    const auto s = best_split(x, y, all_rows(4), 1);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->feature, 0);
    EXPECT_TRUE(split_preferred({0, 1.0, 5.0}, {1, 0.5, 5.0}));
    EXPECT_TRUE(split_preferred({0, 0.5, 5.0}, {0, 1.0, 5.0 + 1e-12}));
    EXPECT_TRUE(split_preferred({1, 0.5, 6.0}, {0, 0.5, 5.0}));
}

TEST(Tree, MatchesBruteForceOnRandomInstances)
{
    Rng rng(123);
    for (int trial = 0; trial < 500; ++trial)
    {
        const auto n = static_cast<Eigen::Index>(2 + rng.below(14));
        const auto f = static_cast<Eigen::Index>(1 + rng.below(4));
        Eigen::MatrixXd x(n, f);
        Eigen::MatrixXd y(n, 2);
        for (Eigen::Index i = 0; i < x.size(); ++i)
        {
            x.data()[i] = static_cast<double>(rng.below(5));
        }
        for (Eigen::Index i = 0; i < y.size(); ++i)
        {
            y.data()[i] = rng.uniform(-10.0, 10.0);
        }
        const int min_leaf = 1 + static_cast<int>(rng.below(3));
        const auto got = best_split(x, y, all_rows(n), min_leaf);
        const auto want = testing::brute_force_split(x, y, all_rows(n), min_leaf);
        ASSERT_EQ(got.has_value(), want.has_value());
        if (got)
        {
            EXPECT_EQ(got->feature, want->feature);
            EXPECT_DOUBLE_EQ(got->threshold, want->threshold);
            EXPECT_NEAR(got->gain, want->gain, 1e-9 * std::max(1.0, want->gain));
        }
    }
}

TEST(Tree, UnlimitedDepthInterpolatesTrainingData)
{
    Rng rng(4);
    Eigen::MatrixXd x(60, 3);
    Eigen::MatrixXd y(60, 2);
    for (Eigen::Index i = 0; i < 60; ++i)
    {
        x(i, 0) = static_cast<double>(i);
        x(i, 1) = rng.uniform(0, 1);
        x(i, 2) = rng.uniform(0, 1);
        y(i, 0) = rng.uniform(0, 100);
        y(i, 1) = rng.uniform(0, 100);
    }
    const auto tree = fit_tree(x, y, TreeConfig{});
    EXPECT_LT((predict_tree(tree, x) - y).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_EQ(tree.leaf_count(), 60u);
}

TEST(Tree, DepthAndLeafLimitsRespected)
{
    Rng rng(8);
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(200, 3);
    Eigen::MatrixXd y = Eigen::MatrixXd::Random(200, 2);
    TreeConfig c;
    c.max_depth = 3;
    const auto shallow = fit_tree(x, y, c);
    EXPECT_LE(shallow.depth(), 3);
    EXPECT_LE(shallow.leaf_count(), 8u);
    TreeConfig leafy;
    leafy.min_samples_leaf = 10;
    const auto coarse = fit_tree(x, y, leafy);
    for (const auto &node : coarse.nodes)
    {
        if (node.is_leaf())
        {
            EXPECT_GE(node.count, 10u);
        }
    }
}

TEST(Tree, PredictionsAreLeafMeans)
{
    Eigen::MatrixXd x(6, 1);
    x << 1, 2, 3, 10, 11, 12;
    Eigen::MatrixXd y(6, 2);
    y << 0, 0, 1, 1, 2, 2, 10, 20, 12, 20, 14, 20;
    TreeConfig c;
    c.max_depth = 1;
    const auto tree = fit_tree(x, y, c);
    Eigen::MatrixXd probe(2, 1);
    probe << 0, 100;
    const auto p = predict_tree(tree, probe);
    EXPECT_DOUBLE_EQ(p(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(p(1, 0), 12.0);
    EXPECT_DOUBLE_EQ(p(1, 1), 20.0);
}

TEST(Tree, JsonRoundTrip)
{
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(50, 2);
    Eigen::MatrixXd y = Eigen::MatrixXd::Random(50, 2);
    const auto tree = fit_tree(x, y, TreeConfig{});
    const auto back = tree_from_json(nlohmann::json::parse(tree_to_json(tree).dump()));
    EXPECT_EQ(predict_tree(back, x), predict_tree(tree, x));
    EXPECT_EQ(back.leaf_count(), tree.leaf_count());
}

TEST(Tree, WrongWidthRejected)
{
    const auto tree = fit_tree(Eigen::MatrixXd::Random(10, 2), Eigen::MatrixXd::Random(10, 2), TreeConfig{});
    EXPECT_THROW(predict_tree(tree, Eigen::MatrixXd::Zero(1, 3)), TreeError);
    EXPECT_THROW(fit_tree(Eigen::MatrixXd::Zero(0, 2), Eigen::MatrixXd::Zero(0, 2), TreeConfig{}), TreeError);
}

} // namespace
} // namespace beamloc
