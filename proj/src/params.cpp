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
#include <mtdl/params.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mtdl
{
    TapParameterSet preset_5gr()
    {
        TapParameterSet p;

        // delay [s], power [dB], {p00, p11, p1}
        p.taps = {
            {0.0, 0.0, {0.0, 1.0, 1.0}},
            {1e-7, -3.14, {0.9227, 0.9485, 0.9209}},
            {2e-7, -17.02, {0.8403, 0.8571, 0.7670}},
            {3e-7, -26.31, {0.7668, 0.6975, 0.5676}},
            {4e-7, -39.35, {0.7978, 0.8875, 0.4647}},
        };

        p.amplitude_dist = {-3.66, 1.08};
        p.phase_dist = {0.0, std::numbers::pi};
        p.max_doppler_hz = 160.0;

        p.correlation = {
            {1.0, 0.5009, 0.7733, 0.2320, 0.0525},
            {0.5009, 1.0, 0.6170, 0.5997, 0.1714},
            {0.7733, 0.6170, 1.0, 0.4369, 0.0513},
            {0.2320, 0.5997, 0.4369, 1.0, 0.6132},
            {0.0525, 0.1714, 0.0513, 0.6132, 1.0},
        };

        // Close to the coherence time 9 / (16 pi f_max) = 1.12 ms at 160 Hz.
        p.snapshot_interval_s = 1e-3;
        p.delay_resolution_s = 100e-9;
        return p;
    }

    namespace
    {
        std::string idx(std::size_t i) { return "[" + std::to_string(i) + "]"; }

        bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }
    } // namespace

    ValidationReport validate(const TapParameterSet &params)
    {
        ValidationReport report;
        auto fail = [&](const std::string &field, const std::string &msg)
        { report.violations.push_back(field + ": " + msg); };

        const std::size_t L = params.taps.size();
        if (L == 0)
            fail("taps", "at least one tap is required");

        const double res = params.delay_resolution_s;
        const bool res_ok = std::isfinite(res) && res > 0.0;
        if (!res_ok)
            fail("delay_resolution_s", "must be positive");

        for (std::size_t i = 0; i < L; ++i)
        {
            const auto &tap = params.taps[i];
            const std::string path = "taps" + idx(i);

            if (!std::isfinite(tap.delay_s) || tap.delay_s < 0.0)
                fail(path + ".delay_s", "must be nonnegative");
            else if (res_ok)
            {
                const double bins = tap.delay_s / res;
                if (std::abs(bins - std::round(bins)) > 1e-6)
                    fail(path + ".delay_s", "not an integer multiple of delay_resolution_s");
            }
            if (i > 0 && !(tap.delay_s > params.taps[i - 1].delay_s))
                fail(path + ".delay_s", "delays not increasing");

            if (!std::isfinite(tap.mean_power_db) || tap.mean_power_db > 0.0)
                fail(path + ".mean_power_db", "must be <= 0 dB (relative to tap 1)");

            if (!is_probability(tap.chain.p00))
                fail(path + ".p00", "probability outside [0, 1]");
            if (!is_probability(tap.chain.p11))
                fail(path + ".p11", "probability outside [0, 1]");
            if (!is_probability(tap.chain.p1_init))
                fail(path + ".p1", "probability outside [0, 1]");
        }
        if (L > 0 && std::abs(params.taps[0].mean_power_db) > 1e-9)
            fail("taps[0].mean_power_db", "tap 1 must be the 0 dB reference");

        if (!std::isfinite(params.amplitude_dist.mu))
            fail("amplitude_dist.mu", "must be finite");
        if (!std::isfinite(params.amplitude_dist.sigma) || params.amplitude_dist.sigma <= 0.0)
            fail("amplitude_dist.sigma", "must be positive");

        if (!std::isfinite(params.phase_dist.lo) || !std::isfinite(params.phase_dist.hi) ||
            params.phase_dist.lo > params.phase_dist.hi)
            fail("phase_dist", "interval must be finite with lo <= hi");

        if (!std::isfinite(params.max_doppler_hz) || params.max_doppler_hz < 0.0)
            fail("max_doppler_hz", "must be >= 0");
        if (!std::isfinite(params.snapshot_interval_s) || params.snapshot_interval_s <= 0.0)
            fail("snapshot_interval_s", "must be positive");

        const auto &C = params.correlation;
        bool square = C.size() == L;
        for (const auto &row : C)
            square = square && row.size() == L;
        if (!square)
        {
            fail("correlation", "must be " + std::to_string(L) + "x" + std::to_string(L));
            return report;
        }

        bool symmetric = true;
        for (std::size_t i = 0; i < L; ++i)
        {
            if (C[i][i] != 1.0)
                fail("correlation" + idx(i) + idx(i), "diagonal must be 1");
            for (std::size_t j = 0; j < L; ++j)
            {
                if (!std::isfinite(C[i][j]) || C[i][j] < -1.0 || C[i][j] > 1.0)
                    fail("correlation" + idx(i) + idx(j), "coefficient outside [-1, 1]");
                if (j > i && std::abs(C[i][j] - C[j][i]) > 1e-12 && symmetric)
                {
                    fail("correlation" + idx(i) + idx(j), "correlation not symmetric");
                    symmetric = false;
                }
            }
        }
        return report;
    }

    void require_valid(const TapParameterSet &params)
    {
        auto report = validate(params);
        if (!report.ok())
            throw ValidationError(std::move(report.violations));
    }

    int tap_count(double max_rms_ds_s, double resolution_s)
    {
        if (!(max_rms_ds_s > 0.0) || !(resolution_s > 0.0))
            throw DomainError("tap_count: RMS delay spread and resolution must be positive");
        // Snap quotients within rounding noise of an integer, so that an exact
        // multiple of the resolution is not pushed up by one.
        const double q = max_rms_ds_s / resolution_s;
        const double nearest = std::round(q);
        const double bins = std::abs(q - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::ceil(q);
        return static_cast<int>(bins) + 1;
    }

    double max_doppler(double speed_mps, double carrier_hz)
    {
        if (!(speed_mps >= 0.0))
            throw DomainError("max_doppler: speed must be >= 0");
        if (!(carrier_hz > 0.0))
            throw DomainError("max_doppler: carrier frequency must be positive");
        return speed_mps * carrier_hz / kSpeedOfLight;
    }

} // namespace mtdl
