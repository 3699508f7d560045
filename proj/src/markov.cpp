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

#include <mtdl/errors.hpp>
#include <mtdl/markov.hpp>
#include <mtdl/rng.hpp>

namespace mtdl
{
    double stationary(const MarkovChain2 &chain)
    {
        const double leave = chain.p01() + chain.p10();
        if (leave <= 0.0)
            return chain.p1_init;
        return chain.p01() / leave;
    }

    StatePath sample_path(const MarkovChain2 &chain, std::size_t n_steps, std::uint64_t seed, double step_interval_s)
    {
        if (n_steps == 0)
            throw DomainError("sample_path: n_steps must be >= 1");

        Rng rng(seed);
        StatePath path;
        path.step_interval_s = step_interval_s;
        path.states.resize(n_steps);

        std::uint8_t s = rng.bernoulli(chain.p1_init) ? 1 : 0;
        path.states[0] = s;
        for (std::size_t k = 1; k < n_steps; ++k)
        {
            const double stay = s ? chain.p11 : chain.p00;
            if (!rng.bernoulli(stay))
                s ^= 1;
            path.states[k] = s;
        }
        return path;
    }

    ChainEstimate estimate_chain(const std::vector<std::uint8_t> &states)
    {
        if (states.size() < 2)
            throw DomainError("estimate_chain: path needs at least 2 states");

        ChainEstimate est;
        auto &c = est.counts;
        std::uint64_t ones = 0;
        for (std::size_t k = 0; k < states.size(); ++k)
        {
            if (states[k] > 1)
                throw DomainError("estimate_chain: states must be 0 or 1");
            ones += states[k];
            if (k == 0)
                continue;
            const int from = states[k - 1], to = states[k];
            if (from == 0)
                (to == 0 ? c.n00 : c.n01)++;
            else
                (to == 0 ? c.n10 : c.n11)++;
        }

        const std::uint64_t from0 = c.n00 + c.n01, from1 = c.n10 + c.n11;
        est.row0_undefined = from0 == 0;
        est.row1_undefined = from1 == 0;
        est.chain.p00 = est.row0_undefined ? 1.0 : static_cast<double>(c.n00) / static_cast<double>(from0);
        est.chain.p11 = est.row1_undefined ? 1.0 : static_cast<double>(c.n11) / static_cast<double>(from1);
        est.chain.p1_init = static_cast<double>(ones) / static_cast<double>(states.size());
        return est;
    }

} // namespace mtdl
