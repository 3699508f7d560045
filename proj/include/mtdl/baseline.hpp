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

#include <mtdl/params.hpp>
#include <mtdl/trace.hpp>

namespace mtdl
{
    enum class BaselineDoppler
    {
        Uniform,        // sub-ray Doppler uniform on [-f_max, f_max]
        ClassicSpectrum // f_max * cos(theta), theta uniform (Jakes)
    };

    // Stationary WSSUS tapped delay line: every tap always present, Rayleigh
    // fading, no inter-tap correlation.
    struct StationaryTdlProfile
    {
        std::vector<double> delays_s;
        std::vector<double> powers_db;
        BaselineDoppler doppler_model = BaselineDoppler::Uniform;
        std::size_t n_sinusoids = 32; // sub-rays per tap
    };

    // Same delays and powers as the Markov model, chains dropped.
    StationaryTdlProfile profile_from_params(const TapParameterSet &params);

    // Normalized-delay profile (delays in units of the RMS delay spread)
    // scaled to the requested delay spread.
    StationaryTdlProfile scale_normalized_profile(const std::vector<double> &normalized_delays,
                                                  const std::vector<double> &powers_db, double delay_spread_s);

    struct StationaryConfig
    {
        double snapshot_interval_s = 1e-3;
        double carrier_hz = 2.16e9;
        double delay_resolution_s = 100e-9;
    };

    // Sum-of-sinusoids Rayleigh fading per tap, mean power per profile.
    CirTrace generate_stationary(const StationaryTdlProfile &profile, double max_doppler_hz, std::size_t n,
                                 std::uint64_t seed, const StationaryConfig &cfg = {});

} // namespace mtdl
