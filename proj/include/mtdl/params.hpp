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

#include <mtdl/markov.hpp>

#include <string>
#include <vector>

namespace mtdl
{
    inline constexpr double kSpeedOfLight = 299792458.0; // m/s

    // Lognormal law of the linear tap amplitude: ln(alpha) ~ N(mu, sigma^2).
    struct LognormalParams
    {
        double mu = 0.0;
        double sigma = 1.0;

        bool operator==(const LognormalParams &) const = default;
    };

    struct TapEntry
    {
        double delay_s = 0.0;
        double mean_power_db = 0.0; // relative to tap 1
        MarkovChain2 chain;

        bool operator==(const TapEntry &) const = default;
    };

    struct PhaseInterval
    {
        double lo = 0.0;
        double hi = 0.0;

        bool operator==(const PhaseInterval &) const = default;
    };

    using Matrix = std::vector<std::vector<double>>;

    // Complete description of the Markov TDL model. Immutable once built; the
    // generators take it by const reference.
    struct TapParameterSet
    {
        std::vector<TapEntry> taps;
        LognormalParams amplitude_dist;
        PhaseInterval phase_dist;
        double max_doppler_hz = 0.0;
        Matrix correlation;               // L x L, applied to ln-amplitudes
        double snapshot_interval_s = 1e-3; // Markov state decision interval
        double delay_resolution_s = 100e-9;

        std::size_t n_taps() const noexcept { return taps.size(); }

        bool operator==(const TapParameterSet &) const = default;
    };

    // The measured 5-tap railway parameter set (2.16 GHz, 10 MHz, 80 km/h).
    TapParameterSet preset_5gr();

    struct ValidationReport
    {
        std::vector<std::string> violations; // "field.path: message"

        bool ok() const noexcept { return violations.empty(); }
    };

    ValidationReport validate(const TapParameterSet &params);

    // Throws ValidationError listing every violation.
    void require_valid(const TapParameterSet &params);

    // Number of taps from the maximum RMS delay spread: ceil(max / resolution) + 1.
    int tap_count(double max_rms_ds_s, double resolution_s);

    // Maximum Doppler shift v * f / c (incidence angle 0).
    double max_doppler(double speed_mps, double carrier_hz);

    inline constexpr double kmh_to_mps(double kmh) noexcept { return kmh / 3.6; }

} // namespace mtdl
