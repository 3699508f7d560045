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
#include <vector>

namespace mtdl
{
    // First-order two-state chain. State 1 = tap alive ("birth"), 0 = dead.
    // The off-diagonal probabilities are derived, so rows are stochastic by
    // construction. p1_init is the occupancy probability of state 1 at t = 0.
    struct MarkovChain2
    {
        double p00 = 1.0;
        double p11 = 1.0;
        double p1_init = 1.0;

        double p01() const noexcept { return 1.0 - p00; }
        double p10() const noexcept { return 1.0 - p11; }

        bool operator==(const MarkovChain2 &) const = default;
    };

    struct StatePath
    {
        std::vector<std::uint8_t> states;
        double step_interval_s = 1.0;
    };

    // Long-run probability of state 1: p01 / (p01 + p10). When both states are
    // absorbing the path never leaves its start state, so p1_init is returned.
    double stationary(const MarkovChain2 &chain);

    // states[0] ~ Bernoulli(p1_init), then one draw per step from the current
    // row of the transition matrix. Throws DomainError for n_steps == 0.
    StatePath sample_path(const MarkovChain2 &chain, std::size_t n_steps, std::uint64_t seed,
                          double step_interval_s = 1.0);

    struct TransitionCounts
    {
        std::uint64_t n00 = 0, n01 = 0, n10 = 0, n11 = 0;

        std::uint64_t total() const noexcept { return n00 + n01 + n10 + n11; }
    };

    struct ChainEstimate
    {
        MarkovChain2 chain;
        TransitionCounts counts;
        // Set when the state never occurs as a transition source; the
        // corresponding self-loop is then reported as 1.0.
        bool row0_undefined = false;
        bool row1_undefined = false;
    };

    // Maximum-likelihood transition probabilities by transition counting;
    // p1_init is the overall fraction of ones. Needs at least two states.
    ChainEstimate estimate_chain(const std::vector<std::uint8_t> &states);
    inline ChainEstimate estimate_chain(const StatePath &path) { return estimate_chain(path.states); }

} // namespace mtdl
