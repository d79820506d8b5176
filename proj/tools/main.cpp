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

#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    using namespace beamloc::app;

    CLI::App app{"beamloc: beam-RSRP fingerprint positioning pipeline"};
    app.require_subcommand(1);

    CommandOptions options;
    std::string out_dir;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--config", options.config, "Run configuration (YAML)")->required();
        cmd->add_option("--out", out_dir, "Output directory (overrides output_dir)");
        cmd->add_option("--seed", seed, "Global seed (overrides the config)");
        cmd->add_option("--jobs", options.jobs, "Worker threads")->check(CLI::PositiveNumber);
        cmd->add_flag("--dry-run", options.dry_run, "Print the plan without writing files");
    };
    auto *scenario = app.add_subcommand("scenario", "Build the deployment and export it as JSON");
    auto *dataset = app.add_subcommand("dataset", "Generate fingerprint datasets");
    auto *run = app.add_subcommand("run", "Run the experiment matrix and write reports");
    add_common(scenario);
    add_common(dataset);
    add_common(run);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    auto *active = app.get_subcommands().front();
    if (active->count("--out") > 0)
    {
        options.out_dir = out_dir;
    }
    if (active->count("--seed") > 0)
    {
        options.seed = seed;
    }

    if (active == scenario)
    {
        return cmd_scenario(options, std::cout, std::cerr);
    }
    if (active == dataset)
    {
        return cmd_dataset(options, std::cout, std::cerr);
    }
    return cmd_run(options, std::cout, std::cerr);
}
