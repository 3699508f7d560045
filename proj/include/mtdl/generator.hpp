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
#include <mtdl/rng.hpp>
#include <mtdl/trace.hpp>

#include <span>

namespace mtdl
{
    enum class DopplerMode
    {
        PerTapConstant, // one draw per tap for the whole trace
        RedrawnPerBirth // fresh draw at every birth, held for the life-segment
    };

    enum class AmplitudeMode
    {
        CommonLognormal,     // every tap ~ LN(mu, sigma), unscaled
        PowerScaledLognormal // LN shape normalized to unit mean-square, scaled to the tap power
    };

    struct GenConfig
    {
        std::size_t n_snapshots = 1000;
        std::uint64_t rng_seed = 0;
        DopplerMode doppler_mode = DopplerMode::RedrawnPerBirth;
        AmplitudeMode amplitude_mode = AmplitudeMode::PowerScaledLognormal;
        double carrier_hz = 2.16e9;
    };

    // Factor B with B * B^T equal to the (possibly repaired) correlation.
    struct CorrelationFactor
    {
        Matrix target;   // matrix actually realized
        Matrix factor;   // lower triangular when no repair was needed
        bool repaired = false;
    };

    // Nearest-PSD repair: clip negative eigenvalues to zero, rebuild, rescale
    // to unit diagonal.
    Matrix repair_correlation(const Matrix &corr);

    // Requires a square, symmetric matrix with unit diagonal (DomainError).
    CorrelationFactor factor_correlation(const Matrix &corr);

    // n x L amplitudes; ln-amplitudes are jointly Gaussian with the given
    // correlation and marginals N(mu, sigma^2).
    Table<double> correlated_lognormal_draw(const Matrix &corr, const LognormalParams &ln, std::size_t n,
                                            std::uint64_t seed);

    inline double draw_doppler(Rng &rng, double max_doppler_hz)
    {
        return rng.uniform(-max_doppler_hz, max_doppler_hz);
    }

    // Optional side output of generate() for inspection and tests.
    struct GenerationRecord
    {
        Table<std::uint8_t> states;        // z_l(t)
        std::vector<double> doppler_draws; // every Doppler value drawn, in order
        Table<double> doppler_hz;          // Doppler in force per cell (0 when dead)
        CorrelationFactor correlation;
    };

    // Non-stationary TDL synthesis. Throws ValidationError for invalid params
    // and DomainError for n_snapshots == 0.
    CirTrace generate(const TapParameterSet &params, const GenConfig &cfg, GenerationRecord *record = nullptr);

    // Time-varying convolution of `input` with the trace. Tap delays must land
    // on whole samples at sample_rate_hz.
    std::vector<cdouble> apply_to_signal(const CirTrace &trace, std::span<const cdouble> input, double sample_rate_hz);

    // Adds circular complex white noise of the given mean power to every cell.
    CirTrace add_noise(const CirTrace &trace, double noise_power, std::uint64_t seed);

} // namespace mtdl
