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

#ifndef BEAMLOC_IO_HPP
#define BEAMLOC_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace beamloc
{

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Writes to a sibling temporary file and renames it over `path`.
void write_text_atomic(const std::filesystem::path &path, std::string_view contents);

std::string read_text(const std::filesystem::path &path);

/// Shortest round-trippable decimal ("%.17g").
std::string format_double(double v);

} // namespace beamloc

#endif // BEAMLOC_IO_HPP
