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

#include "beamloc/io.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace beamloc::app
{
namespace
{

namespace fs = std::filesystem;

const fs::path kConfigs = BEAMLOC_CONFIG_DIR;

const char *kSmall = R"(seed: 3
scenario:
  area_width: 120
  area_height: 60
  grid_resolution: 3
  sites: {rows: 1, columns: 1, origin: [60, 30]}
  blocks: {blocks_per_span_x: 1}
train: {max_epochs: 5, normalize_labels: true}
features:
  - {name: s3n0, serving_beams: 3, neighbor_cells: 0}
  - {name: s2n1, serving_beams: 2, neighbor_cells: 1}
experiments:
  - {id: tree, features: s3n0, model: dtree}
  - {id: mlp, features: s3n0, hidden_layers: [8], replicas: 2}
)";

class Cli : public ::testing::Test
{
  protected:
    void SetUp() override
    {
        m_dir = fs::temp_directory_path() /
                ("beamloc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(m_dir);
        fs::create_directories(m_dir);
    }
    void TearDown() override { fs::remove_all(m_dir); }

    fs::path write_config(const std::string &text, const std::string &name = "c.yaml")
    {
        write_text_atomic(m_dir / name, text);
        return m_dir / name;
    }

    CommandOptions options(const fs::path &config, const std::string &out = "out")
    {
        CommandOptions o;
        o.config = config;
        o.out_dir = m_dir / out;
        return o;
    }

    fs::path m_dir;
    std::ostringstream m_out;
    std::ostringstream m_err;
};

TEST_F(Cli, MissingConfigExitsTwo)
{
    EXPECT_EQ(cmd_scenario(options(m_dir / "absent.yaml"), m_out, m_err), kExitConfig);
    EXPECT_EQ(cmd_run(options(m_dir / "absent.yaml"), m_out, m_err), kExitConfig);
}

TEST_F(Cli, UnknownKeyNamesSectionAndKey)
{
    std::string text = kSmall;
    text.replace(text.find("rows: 1"), 7, "rows: 1, towers: 2");
    EXPECT_EQ(cmd_scenario(options(write_config(text)), m_out, m_err), kExitConfig);
    EXPECT_NE(m_err.str().find("scenario.sites.towers"), std::string::npos) << m_err.str();
}

TEST_F(Cli, BadValueNamesKey)
{
    std::string text = kSmall;
    text.replace(text.find("grid_resolution: 3"), 18, "grid_resolution: fine");
    EXPECT_EQ(cmd_dataset(options(write_config(text)), m_out, m_err), kExitConfig);
    EXPECT_NE(m_err.str().find("scenario.grid_resolution"), std::string::npos) << m_err.str();
}

TEST_F(Cli, MalformedSectionRejected)
{
    std::string text = kSmall;
    text.replace(text.find("train: {"), 8, "train: [1, 2] #{");
    EXPECT_EQ(cmd_run(options(write_config(text)), m_out, m_err), kExitConfig);
    EXPECT_NE(m_err.str().find("train"), std::string::npos);
}

TEST_F(Cli, UnknownFeatureSetReferenceRejected)
{
    std::string text = kSmall;
    text.replace(text.find("features: s3n0, model"), 14, "features: s9n9");
    EXPECT_EQ(cmd_run(options(write_config(text)), m_out, m_err), kExitConfig);
    EXPECT_NE(m_err.str().find("experiments[0].features"), std::string::npos) << m_err.str();
}

TEST_F(Cli, SeedRequiredUnlessOverridden)
{
    std::string text = kSmall;
    text.replace(0, 8, "");
    EXPECT_THROW(parse_run_config(text), ConfigError);
    EXPECT_EQ(parse_run_config(text, 42).seed, 42u);
    EXPECT_EQ(parse_run_config(kSmall, 42).seed, 42u);
}

TEST_F(Cli, ShippedFullMatrixHasEightSites)
{
    auto o = options(kConfigs / "paper-matrix.yaml");
    o.dry_run = true;
    EXPECT_EQ(cmd_scenario(o, m_out, m_err), kExitOk);
    EXPECT_NE(m_out.str().find("sites: 8\n"), std::string::npos);
    EXPECT_NE(m_out.str().find("cells: 24\n"), std::string::npos);
    EXPECT_FALSE(fs::exists(m_dir / "out"));
}

TEST_F(Cli, ShippedConfigsParse)
{
    const auto tiny = load_run_config(kConfigs / "tiny.yaml");
    EXPECT_EQ(tiny.scenario.sites.rows * tiny.scenario.sites.columns, 1);
    const auto full = load_run_config(kConfigs / "paper-matrix.yaml");
    EXPECT_EQ(full.scenario.sites.rows * full.scenario.sites.columns, 8);
    EXPECT_GE(expand_matrix(full).size(), 10u);
}

TEST_F(Cli, ExpandMatrixSharesSeedsAcrossArms)
{
    const auto c = parse_run_config(kSmall);
    const auto m = expand_matrix(c);
    ASSERT_EQ(m.size(), 3u);
    EXPECT_EQ(m[0].id, "tree");
    EXPECT_EQ(m[1].id, "mlp-r0");
    EXPECT_EQ(m[2].id, "mlp-r1");
    EXPECT_EQ(m[0].split_seed, m[1].split_seed);
    EXPECT_EQ(m[0].init_seed, m[1].init_seed);
    EXPECT_NE(m[1].split_seed, m[2].split_seed);
    EXPECT_EQ(m[1].train.max_epochs, 5);
}

TEST_F(Cli, DryRunWritesNothing)
{
    auto o = options(write_config(kSmall));
    o.dry_run = true;
    EXPECT_EQ(cmd_run(o, m_out, m_err), kExitOk);
    EXPECT_NE(m_out.str().find("mlp-r1"), std::string::npos);
    EXPECT_EQ(cmd_dataset(o, m_out, m_err), kExitOk);
    EXPECT_FALSE(fs::exists(m_dir / "out"));
}

TEST_F(Cli, DatasetIsIdempotentAndRowCountMatches)
{
    const auto cfg = write_config(kSmall);
    ASSERT_EQ(cmd_dataset(options(cfg, "a"), m_out, m_err), kExitOk) << m_err.str();
    std::ostringstream second;
    ASSERT_EQ(cmd_dataset(options(cfg, "b"), second, m_err), kExitOk);
    EXPECT_EQ(read_text(m_dir / "a/datasets/s3n0.csv"), read_text(m_dir / "b/datasets/s3n0.csv"));
    EXPECT_EQ(read_text(m_dir / "a/datasets/s2n1.json"), read_text(m_dir / "b/datasets/s2n1.json"));
    EXPECT_NE(m_out.str().find("los_fraction: "), std::string::npos);

    const auto text = m_out.str();
    const auto pos = text.find("los_samples: ");
    const auto los = std::stoul(text.substr(pos + 13));
    const auto csv = read_text(m_dir / "a/datasets/s3n0.csv");
    const auto lines = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
    EXPECT_EQ(lines - 1, los);
}

TEST_F(Cli, RunIsDeterministicAndStaysInOutputDir)
{
    const auto cfg = write_config(kSmall);
    ASSERT_EQ(cmd_run(options(cfg, "a"), m_out, m_err), kExitOk) << m_err.str();
    ASSERT_EQ(cmd_run(options(cfg, "b"), m_out, m_err), kExitOk);
    for (const auto *name : {"reports/tree.json", "reports/mlp-r0.json", "reports/mlp-r1.json", "comparison.csv",
                             "cdf/mlp-r1.csv", "manifest.json"})
    {
        EXPECT_EQ(read_text(m_dir / "a" / name), read_text(m_dir / "b" / name)) << name;
    }
    for (const auto &e : fs::recursive_directory_iterator(m_dir))
    {
        const auto rel = fs::relative(e.path(), m_dir).string();
        EXPECT_TRUE(rel == "c.yaml" || rel.rfind("a", 0) == 0 || rel.rfind("b", 0) == 0) << rel;
    }
}

TEST_F(Cli, SeedOverrideChangesResults)
{
    const auto cfg = write_config(kSmall);
    auto o = options(cfg, "a");
    ASSERT_EQ(cmd_run(o, m_out, m_err), kExitOk);
    o = options(cfg, "b");
    o.seed = 999;
    ASSERT_EQ(cmd_run(o, m_out, m_err), kExitOk);
    EXPECT_NE(read_text(m_dir / "a/reports/mlp-r0.json"), read_text(m_dir / "b/reports/mlp-r0.json"));
}

TEST_F(Cli, PartialFailureIsListedInManifest)
{
    std::string text = kSmall;
    text += "  - {id: doomed, features: s3n0, topology: cell_specific, model: dtree}\n";
    text += "dataset: {min_cell_rows: 1000000}\n";
    ASSERT_EQ(cmd_run(options(write_config(text)), m_out, m_err), kExitOk);
    const auto manifest = nlohmann::json::parse(read_text(m_dir / "out/manifest.json"));
    const auto &last = manifest.at("experiments").back();
    EXPECT_EQ(last.at("id"), "doomed");
    EXPECT_EQ(last.at("status"), "failed");
    EXPECT_FALSE(fs::exists(m_dir / "out/reports/doomed.json"));
}

TEST_F(Cli, AllExperimentsFailingExitsOne)
{
    const std::string text = std::string(kSmall).substr(0, std::string(kSmall).find("experiments:")) +
                             "dataset: {min_cell_rows: 1000000}\n"
                             "experiments:\n"
                             "  - {id: doomed, features: s3n0, topology: cell_specific, model: dtree}\n";
    EXPECT_EQ(cmd_run(options(write_config(text)), m_out, m_err), kExitFailure);
}

TEST_F(Cli, TinyTreeMatrixIsQuick)
{
    const std::string text = std::string(kSmall).substr(0, std::string(kSmall).find("experiments:")) +
                             "experiments:\n  - {id: tree, features: s3n0, model: dtree}\n";
    const auto start = std::chrono::steady_clock::now();
    ASSERT_EQ(cmd_run(options(write_config(text)), m_out, m_err), kExitOk);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 10.0);
}

int run_binary(const std::string &args)
{
    const std::string cmd = std::string(BEAMLOC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(Cli, BinaryExitCodes)
{
    EXPECT_EQ(run_binary("scenario --config " + (m_dir / "absent.yaml").string()), 2);
    EXPECT_EQ(run_binary("scenario --bogus"), 2);
    EXPECT_EQ(run_binary(""), 2);
    EXPECT_EQ(run_binary("--help"), 0);
    const auto cfg = write_config(kSmall);
    EXPECT_EQ(run_binary("scenario --config " + cfg.string() + " --out " + (m_dir / "o").string()), 0);
    EXPECT_TRUE(fs::exists(m_dir / "o/scenario.json"));
}

} // namespace
} // namespace beamloc::app
