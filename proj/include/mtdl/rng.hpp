// SPDX-License-Identifier: Apache-2.0
//
// mtdl: non-stationary Markov tapped-delay-line channel toolkit
// Copyright (C) 2026 The mtdl Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace mtdl
{
    // Reproducibility contract: the engine is std::mt19937_64, whose output
    // sequence is fixed by the C++ standard. The uniform and normal transforms
    // below are our own (the std distributions are implementation-defined), so
    // a seed yields the same stream on every conforming toolchain.
    inline constexpr const char *kRngName = "mt19937_64+splitmix64-substreams";

    constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Seed for an independent sub-stream identified by (purpose, index).
    constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) noexcept
    {
        return splitmix64(seed ^ splitmix64((purpose << 32) ^ index));
    }

    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        std::uint64_t next_u64() { return engine_(); }

        // Uniform on [0, 1) with 53 random bits.
        double uniform()
        {
            return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        }

        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        // True with probability p; p = 0 never fires, p = 1 always fires.
        bool bernoulli(double p) { return uniform() < p; }

        // Standard normal by Box-Muller; the second variate is cached.
        double normal();

    private:
        std::mt19937_64 engine_;
        double cached_ = 0.0;
        bool has_cached_ = false;
    };

} // namespace mtdl
