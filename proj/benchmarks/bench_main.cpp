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
#include "beamloc/fingerprint.hpp"
#include "beamloc/mlp.hpp"
#include "beamloc/propagation.hpp"
#include "beamloc/scenario.hpp"

#include <benchmark/benchmark.h>

namespace
{

beamloc::ScenarioConfig small_config()
{
    beamloc::ScenarioConfig config;
    config.area_width = 200.0;
    config.area_height = 100.0;
    config.sites.rows = 1;
    config.sites.columns = 2;
    config.sites.origin = {50.0, 50.0};
    config.sites.spacing_x = 100.0;
    config.seed = 7;
    return config;
}

const beamloc::Dataset &shared_dataset()
{
    static const beamloc::Dataset dataset = [] {
        auto scenario = beamloc::build_scenario(small_config());
        auto samples = beamloc::generate_samples(scenario, beamloc::PropagationConfig{}, 1);
        return beamloc::build_dataset(samples, beamloc::FeatureConfig{}, 0.9, 11);
    }();
    return dataset;
}

void BM_MeasureLocation(benchmark::State &state)
{
    auto scenario = beamloc::build_scenario(small_config());
    beamloc::PropagationConfig propagation;
    const beamloc::Point2 location = beamloc::enumerate_locations(scenario).front();
    for (auto _ : state)
    {
        auto m = beamloc::measure_location(location, scenario, propagation);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_MeasureLocation);

void BM_GenerateSamples(benchmark::State &state)
{
    auto scenario = beamloc::build_scenario(small_config());
    beamloc::PropagationConfig propagation;
    for (auto _ : state)
    {
        auto samples = beamloc::generate_samples(scenario, propagation, 1);
        benchmark::DoNotOptimize(samples);
    }
}
BENCHMARK(BM_GenerateSamples)->Unit(benchmark::kMillisecond);

void BM_MlpEpoch(benchmark::State &state)
{
    const auto &ds = shared_dataset();
    auto x = ds.select_features(ds.train_rows);
    auto y = ds.select_labels(ds.train_rows);
    const int width = static_cast<int>(state.range(0));
    beamloc::MlpArchitecture arch;
    arch.input_dim = static_cast<int>(x.cols());
    arch.hidden_layers = {width, width};
    beamloc::TrainConfig train;
    train.max_epochs = 1;
    for (auto _ : state)
    {
        auto model = beamloc::init_model(arch, 3);
        beamloc::train(model, x, y, train);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_MlpEpoch)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_TreeFit(benchmark::State &state)
{
    const auto &ds = shared_dataset();
    auto x = ds.select_features(ds.train_rows);
    auto y = ds.select_labels(ds.train_rows);
    for (auto _ : state)
    {
        auto tree = beamloc::fit_tree(x, y, beamloc::TreeConfig{});
        benchmark::DoNotOptimize(tree);
    }
}
BENCHMARK(BM_TreeFit)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
