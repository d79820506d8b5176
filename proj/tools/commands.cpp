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

#include "run_config.hpp"

#include "beamloc/eval.hpp"
#include "beamloc/fingerprint.hpp"
#include "beamloc/io.hpp"
#include "beamloc/random.hpp"
#include "beamloc/scenario.hpp"

#include <nlohmann/json.hpp>

#include <iomanip>
#include <ostream>

namespace beamloc::app
{

namespace
{

std::string safe_name(const std::string &id)
{
    std::string s = id;
    for (char &c : s)
    {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        if (!ok)
        {
            c = '_';
        }
    }
    return s;
}

std::filesystem::path output_dir(const CommandOptions &options, const RunConfig &config)
{
    return options.out_dir.value_or(config.output_dir);
}

struct Pipeline
{
    Scenario scenario;
    std::shared_ptr<const SampleSet> samples; // LoS-filtered
    std::size_t all_samples = 0;
    double los_fraction = 0.0;
};

Pipeline build_pipeline(const RunConfig &config, unsigned jobs)
{
    Pipeline p;
    p.scenario = build_scenario(config.scenario);
    auto all = generate_samples(p.scenario, config.propagation, jobs);
    p.all_samples = all.samples.size();
    p.los_fraction = los_fraction(all);
    p.samples = std::make_shared<const SampleSet>(filter_los(std::move(all)));
    return p;
}

void print_summary(const Scenario &sc, std::ostream &out)
{
    out << "sites: " << sc.sites.size() << "\n"
        << "cells: " << sc.cell_count() << "\n"
        << "beams: " << sc.beam_count() << "\n"
        << "buildings: " << sc.buildings.size() << "\n"
        << "locations: " << enumerate_locations(sc).size() << "\n";
}

// Shared error boundary: config problems exit 2, anything else 1.
template <typename F>
int guarded(std::ostream &err, F &&body)
{
    try
    {
        return body();
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const ScenarioError &e)
    {
        err << "config error: scenario: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

} // namespace

int cmd_scenario(const CommandOptions &options, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const auto config = load_run_config(options.config, options.seed);
        const auto scenario = build_scenario(config.scenario);
        const auto path = output_dir(options, config) / "scenario.json";
        print_summary(scenario, out);
        if (options.dry_run)
        {
            out << "dry run: would write " << path.string() << "\n";
            return kExitOk;
        }
        write_text_atomic(path, scenario_to_json(scenario).dump(2) + "\n");
        out << "wrote " << path.string() << "\n";
        return kExitOk;
    });
}

int cmd_dataset(const CommandOptions &options, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const auto config = load_run_config(options.config, options.seed);
        const auto dir = output_dir(options, config) / "datasets";
        if (options.dry_run)
        {
            for (const auto &f : config.feature_sets)
            {
                out << "dry run: would write " << (dir / (safe_name(f.name) + ".csv")).string() << "\n";
            }
            return kExitOk;
        }
        const auto p = build_pipeline(config, options.jobs);
        out << "locations: " << p.all_samples << "\n"
            << "los_fraction: " << std::fixed << std::setprecision(4) << p.los_fraction << "\n"
            << std::defaultfloat << "los_samples: " << p.samples->samples.size() << "\n";
        if (p.samples->samples.empty())
        {
            err << "error: no sample has line of sight to its serving cell\n";
            return kExitFailure;
        }
        const auto split_seed = derive_seed(config.seed, SeedStream::split, 0);
        for (const auto &f : config.feature_sets)
        {
            const auto ds = build_dataset(*p.samples, f, config.split_fraction, split_seed);
            const auto base = dir / safe_name(f.name);
            save_dataset(ds, base.string() + ".csv", base.string() + ".json");
            out << "dataset " << f.name << ": rows=" << ds.rows() << " columns=" << ds.features.cols()
                << " excluded=" << ds.excluded.total() << "\n";
        }
        return kExitOk;
    });
}

int cmd_run(const CommandOptions &options, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const auto config = load_run_config(options.config, options.seed);
        const auto matrix = expand_matrix(config);
        const auto dir = output_dir(options, config);
        if (options.dry_run)
        {
            out << "planned experiments: " << matrix.size() << "\n";
            for (const auto &d : matrix)
            {
                out << "  " << d.id << "  features=" << d.features.name << " topology=" << to_string(d.topology)
                    << " model=" << to_string(d.model);
                if (d.model == ModelKind::mlp)
                {
                    out << " hidden=";
                    for (std::size_t i = 0; i < d.hidden_layers.size(); ++i)
                    {
                        out << (i ? "x" : "") << d.hidden_layers[i];
                    }
                }
                out << " replica=" << d.replica << "\n";
            }
            return kExitOk;
        }
        if (matrix.empty())
        {
            out << "no experiments configured\n";
            write_text_atomic(dir / "comparison.csv", comparison_csv({}));
            write_text_atomic(dir / "manifest.json", nlohmann::json{{"experiments", nlohmann::json::array()}}.dump(2) + "\n");
            return kExitOk;
        }

        const auto p = build_pipeline(config, options.jobs);
        out << "los_fraction: " << std::fixed << std::setprecision(4) << p.los_fraction << std::defaultfloat
            << " (" << p.samples->samples.size() << " of " << p.all_samples << " locations)\n";
        if (p.samples->samples.empty())
        {
            err << "error: no sample has line of sight to its serving cell\n";
            return kExitFailure;
        }

        DatasetCache cache(p.samples, config.split_fraction);
        const auto outcomes = run_matrix(matrix, cache, options.jobs);

        nlohmann::json manifest;
        manifest["seed"] = config.seed;
        manifest["los_fraction"] = p.los_fraction;
        manifest["experiments"] = nlohmann::json::array();
        std::size_t failures = 0;
        for (const auto &o : outcomes)
        {
            nlohmann::json entry{{"id", o.experiment_id}};
            if (o.report)
            {
                const auto name = safe_name(o.experiment_id);
                write_text_atomic(dir / "reports" / (name + ".json"), report_to_json(*o.report).dump(2) + "\n");
                write_text_atomic(dir / "cdf" / (name + ".csv"), cdf_csv(*o.report));
                entry["status"] = "ok";
                entry["report"] = "reports/" + name + ".json";
                out << "  " << o.experiment_id << ": test mean " << o.report->test.mean << " m, std "
                    << o.report->test.std << " m (centroid " << o.report->centroid_test.mean << " m)\n";
            }
            else
            {
                ++failures;
                entry["status"] = "failed";
                entry["error"] = o.error;
                err << "  " << o.experiment_id << " failed: " << o.error << "\n";
            }
            manifest["experiments"].push_back(entry);
        }
        write_text_atomic(dir / "comparison.csv", comparison_csv(outcomes));
        write_text_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
        out << "experiments: " << outcomes.size() - failures << " ok, " << failures << " failed\n";
        return failures == outcomes.size() ? kExitFailure : kExitOk;
    });
}

} // namespace beamloc::app
