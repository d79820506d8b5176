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

#ifndef BEAMLOC_RANDOM_HPP
#define BEAMLOC_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace beamloc
{

std::uint64_t splitmix64(std::uint64_t x);

/// Sub-seed streams fanned out from one global seed.
enum class SeedStream : std::uint64_t
{
    scenario = 1,
    split = 2,
    init = 3,
    shuffle = 4,
    shadowing = 5,
};

/// derive_seed(g, s, i) = splitmix64(splitmix64(g ^ (s * 0x9E3779B97F4A7C15)) + i).
/// Stable across platforms and library versions.
std::uint64_t derive_seed(std::uint64_t global_seed, SeedStream stream, std::uint64_t index = 0);

/// Seeded generator whose draws do not depend on implementation-defined
/// standard distributions, so results are reproducible across toolchains.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    std::uint64_t next() { return m_engine(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Standard normal via Box-Muller.
    double normal();

    template <typename T>
    void shuffle(std::vector<T> &v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
        {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 m_engine;
};

/// Deterministic standard-normal draw keyed by (seed, a, b); used where a
/// value must not depend on evaluation order.
double keyed_normal(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

} // namespace beamloc

#endif // BEAMLOC_RANDOM_HPP
