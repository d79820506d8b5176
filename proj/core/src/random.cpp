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

#include "beamloc/random.hpp"

#include <cmath>
#include <numbers>

namespace beamloc
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t global_seed, SeedStream stream, std::uint64_t index)
{
    auto s = static_cast<std::uint64_t>(stream);
    return splitmix64(splitmix64(global_seed ^ (s * 0x9E3779B97F4A7C15ULL)) + index);
}

std::uint64_t Rng::below(std::uint64_t n)
{
    // rejection sampling removes modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do
    {
        r = m_engine();
    } while (r >= limit);
    return r % n;
}

namespace
{
double box_muller(double u1, double u2)
{
    // u1 in (0, 1]
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}
} // namespace

double Rng::normal()
{
    double u1 = 1.0 - uniform01();
    double u2 = uniform01();
    return box_muller(u1, u2);
}

double keyed_normal(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
    std::uint64_t h = splitmix64(splitmix64(seed ^ splitmix64(a)) ^ b);
    std::uint64_t h2 = splitmix64(h);
    double u1 = 1.0 - static_cast<double>(h >> 11) * 0x1.0p-53;
    double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
    return box_muller(u1, u2);
}

} // namespace beamloc
