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

#include <mtdl/baseline.hpp>
#include <mtdl/errors.hpp>
#include <mtdl/rng.hpp>

#include <cmath>
#include <numbers>

namespace mtdl
{
    namespace
    {
        constexpr std::uint64_t kStreamFading = 5;
        constexpr double kTwoPi = 2.0 * std::numbers::pi;

        void check_profile(const StationaryTdlProfile &p)
        {
            if (p.delays_s.empty())
                throw DomainError("stationary profile is empty");
            if (p.delays_s.size() != p.powers_db.size())
                throw DomainError("stationary profile: delays and powers differ in length");
            for (std::size_t l = 0; l < p.delays_s.size(); ++l)
            {
                if (!(p.delays_s[l] >= 0.0))
                    throw DomainError("stationary profile: negative delay");
                if (l > 0 && !(p.delays_s[l] > p.delays_s[l - 1]))
                    throw DomainError("stationary profile: delays not increasing");
                if (!std::isfinite(p.powers_db[l]))
                    throw DomainError("stationary profile: power must be finite");
            }
            if (p.n_sinusoids == 0)
                throw DomainError("stationary profile: need at least one sinusoid per tap");
        }
    } // namespace

    StationaryTdlProfile profile_from_params(const TapParameterSet &params)
    {
        StationaryTdlProfile p;
        for (const auto &tap : params.taps)
        {
            p.delays_s.push_back(tap.delay_s);
            p.powers_db.push_back(tap.mean_power_db);
        }
        return p;
    }

    StationaryTdlProfile scale_normalized_profile(const std::vector<double> &normalized_delays,
                                                  const std::vector<double> &powers_db, double delay_spread_s)
    {
        if (!(delay_spread_s > 0.0))
            throw DomainError("scale_normalized_profile: delay spread must be positive");
        StationaryTdlProfile p;
        p.powers_db = powers_db;
        for (double d : normalized_delays)
            p.delays_s.push_back(d * delay_spread_s);
        check_profile(p);
        return p;
    }

    CirTrace generate_stationary(const StationaryTdlProfile &profile, double max_doppler_hz, std::size_t n,
                                 std::uint64_t seed, const StationaryConfig &cfg)
    {
        check_profile(profile);
        if (n == 0)
            throw DomainError("generate_stationary: n must be >= 1");
        if (!(max_doppler_hz >= 0.0))
            throw DomainError("generate_stationary: max Doppler must be >= 0");
        if (!(cfg.snapshot_interval_s > 0.0))
            throw DomainError("generate_stationary: snapshot interval must be positive");

        const std::size_t L = profile.delays_s.size();
        const std::size_t M = profile.n_sinusoids;

        CirTrace trace;
        trace.gains = Table<cdouble>(n, L);
        trace.delays_s = profile.delays_s;
        trace.snapshot_interval_s = cfg.snapshot_interval_s;
        trace.meta.carrier_hz = cfg.carrier_hz;
        trace.meta.delay_resolution_s = cfg.delay_resolution_s;
        trace.meta.rng_seed = seed;
        trace.meta.noiseless = true;

        std::vector<double> freq(M), phase(M);
        for (std::size_t l = 0; l < L; ++l)
        {
            Rng rng(substream_seed(seed, kStreamFading, l));
            for (std::size_t m = 0; m < M; ++m)
            {
                if (profile.doppler_model == BaselineDoppler::Uniform)
                    freq[m] = rng.uniform(-max_doppler_hz, max_doppler_hz);
                else
                    freq[m] = max_doppler_hz * std::cos(kTwoPi * rng.uniform());
                phase[m] = kTwoPi * rng.uniform();
            }

            const double c = std::sqrt(std::pow(10.0, profile.powers_db[l] / 10.0) / static_cast<double>(M));
            for (std::size_t t = 0; t < n; ++t)
            {
                const double time = static_cast<double>(t) * cfg.snapshot_interval_s;
                cdouble g = 0.0;
                for (std::size_t m = 0; m < M; ++m)
                    g += std::polar(c, std::fmod(kTwoPi * freq[m] * time + phase[m], kTwoPi));
                trace.gains(t, l) = g;
            }
        }
        return trace;
    }

} // namespace mtdl
