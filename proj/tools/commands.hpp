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

#ifndef BEAMLOC_TOOLS_COMMANDS_HPP
#define BEAMLOC_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace beamloc::app
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

struct CommandOptions
{
    std::filesystem::path config;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    bool dry_run = false;
};

/// Writes <out>/scenario.json and prints site/cell/beam counts.
int cmd_scenario(const CommandOptions &options, std::ostream &out, std::ostream &err);

/// Generates fingerprints, keeps LoS-to-serving samples, and writes one
/// <out>/datasets/<feature set>.csv + .json pair per feature set.
int cmd_dataset(const CommandOptions &options, std::ostream &out, std::ostream &err);

/// Runs the experiment matrix; writes reports/<id>.json, cdf/<id>.csv,
/// comparison.csv and manifest.json. Exits 1 only if every experiment failed.
int cmd_run(const CommandOptions &options, std::ostream &out, std::ostream &err);

} // namespace beamloc::app

#endif // BEAMLOC_TOOLS_COMMANDS_HPP
