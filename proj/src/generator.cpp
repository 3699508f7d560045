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
#include <mtdl/generator.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace mtdl
{
    namespace
    {
        // Sub-stream purposes; part of the reproducibility contract.
        constexpr std::uint64_t kStreamMarkov = 1;
        constexpr std::uint64_t kStreamAmplitude = 2;
        constexpr std::uint64_t kStreamBirth = 3;
        constexpr std::uint64_t kStreamNoise = 4;

        constexpr double kTwoPi = 2.0 * std::numbers::pi;

        Eigen::MatrixXd to_eigen(const Matrix &m)
        {
            const auto n = static_cast<Eigen::Index>(m.size());
            Eigen::MatrixXd out(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    out(i, j) = m[i][j];
            return out;
        }

        Matrix from_eigen(const Eigen::MatrixXd &m)
        {
            Matrix out(m.rows(), std::vector<double>(m.cols()));
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                    out[i][j] = m(i, j);
            return out;
        }

        void check_correlation_shape(const Matrix &corr)
        {
            const std::size_t n = corr.size();
            if (n == 0)
                throw DomainError("correlation matrix is empty");
            for (std::size_t i = 0; i < n; ++i)
            {
                if (corr[i].size() != n)
                    throw DomainError("correlation matrix is not square");
                if (std::abs(corr[i][i] - 1.0) > 1e-12)
                    throw DomainError("correlation diagonal entry " + std::to_string(i) + " is not 1");
                for (std::size_t j = 0; j < i; ++j)
                    if (std::abs(corr[i][j] - corr[j][i]) > 1e-12)
                        throw DomainError("correlation matrix is not symmetric");
            }
        }

        // Rows of B = V sqrt(max(lambda, 0)), scaled to unit norm.
        Eigen::MatrixXd clipped_factor(const Matrix &corr)
        {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(to_eigen(corr));
            if (eig.info() != Eigen::Success)
                throw DomainError("correlation repair: eigen decomposition failed");
            const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
            Eigen::MatrixXd B = eig.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
            for (Eigen::Index i = 0; i < B.rows(); ++i)
            {
                const double norm = B.row(i).norm();
                if (!(norm > 0.0))
                    throw DomainError("correlation repair failed: row " + std::to_string(i) + " vanished");
                B.row(i) /= norm;
            }
            return B;
        }
    } // namespace

    Matrix repair_correlation(const Matrix &corr)
    {
        check_correlation_shape(corr);
        const Eigen::MatrixXd B = clipped_factor(corr);
        Eigen::MatrixXd R = B * B.transpose();
        R.diagonal().setOnes();
        return from_eigen(R);
    }

    CorrelationFactor factor_correlation(const Matrix &corr)
    {
        check_correlation_shape(corr);

        CorrelationFactor out;
        Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(corr));
        if (llt.info() == Eigen::Success)
        {
            out.target = corr;
            out.factor = from_eigen(llt.matrixL().toDenseMatrix());
            return out;
        }

        const Eigen::MatrixXd B = clipped_factor(corr);
        Eigen::MatrixXd R = B * B.transpose();
        R.diagonal().setOnes();
        out.target = from_eigen(R);
        out.factor = from_eigen(B);
        out.repaired = true;
        return out;
    }

    namespace
    {
        // y = B z with z iid standard normal.
        void correlated_normals(const Matrix &factor, Rng &rng, std::vector<double> &z, std::vector<double> &y)
        {
            const std::size_t L = factor.size();
            for (std::size_t k = 0; k < L; ++k)
                z[k] = rng.normal();
            for (std::size_t i = 0; i < L; ++i)
            {
                double acc = 0.0;
                for (std::size_t k = 0; k < L; ++k)
                    acc += factor[i][k] * z[k];
                y[i] = acc;
            }
        }
    } // namespace

    Table<double> correlated_lognormal_draw(const Matrix &corr, const LognormalParams &ln, std::size_t n,
                                            std::uint64_t seed)
    {
        const auto f = factor_correlation(corr);
        const std::size_t L = corr.size();
        Table<double> out(n, L);
        Rng rng(seed);
        std::vector<double> z(L), y(L);
        for (std::size_t t = 0; t < n; ++t)
        {
            correlated_normals(f.factor, rng, z, y);
            for (std::size_t l = 0; l < L; ++l)
                out(t, l) = std::exp(ln.mu + ln.sigma * y[l]);
        }
        return out;
    }

    CirTrace generate(const TapParameterSet &params, const GenConfig &cfg, GenerationRecord *record)
    {
        require_valid(params);
        if (cfg.n_snapshots == 0)
            throw DomainError("generate: n_snapshots must be >= 1");

        const std::size_t n = cfg.n_snapshots;
        const std::size_t L = params.n_taps();
        const double dt = params.snapshot_interval_s;
        const double fmax = params.max_doppler_hz;
        const auto &ln = params.amplitude_dist;

        auto corr = factor_correlation(params.correlation);

        Table<std::uint8_t> states(n, L);
        for (std::size_t l = 0; l < L; ++l)
        {
            const auto path = sample_path(params.taps[l].chain, n, substream_seed(cfg.rng_seed, kStreamMarkov, l), dt);
            for (std::size_t t = 0; t < n; ++t)
                states(t, l) = path.states[t];
        }

        // Power-scaled: exp(mu + s y) / sqrt(E[a^2]) * sqrt(P) = exp(s y - s^2) * sqrt(P).
        std::vector<double> amp_scale(L), amp_offset(L);
        for (std::size_t l = 0; l < L; ++l)
        {
            if (cfg.amplitude_mode == AmplitudeMode::PowerScaledLognormal)
            {
                amp_offset[l] = -ln.sigma * ln.sigma;
                amp_scale[l] = std::sqrt(std::pow(10.0, params.taps[l].mean_power_db / 10.0));
            }
            else
            {
                amp_offset[l] = ln.mu;
                amp_scale[l] = 1.0;
            }
        }

        CirTrace trace;
        trace.gains = Table<cdouble>(n, L);
        trace.delays_s.reserve(L);
        for (const auto &tap : params.taps)
            trace.delays_s.push_back(tap.delay_s);
        trace.snapshot_interval_s = dt;
        trace.meta.carrier_hz = cfg.carrier_hz;
        trace.meta.delay_resolution_s = params.delay_resolution_s;
        trace.meta.rng_seed = cfg.rng_seed;
        trace.meta.generator_version = kGeneratorVersion;
        trace.meta.noiseless = true;

        std::vector<Rng> birth_rng;
        birth_rng.reserve(L);
        for (std::size_t l = 0; l < L; ++l)
            birth_rng.emplace_back(substream_seed(cfg.rng_seed, kStreamBirth, l));

        std::vector<double> doppler(L, 0.0), phase(L, 0.0);
        std::vector<double> draws;
        if (cfg.doppler_mode == DopplerMode::PerTapConstant)
            for (std::size_t l = 0; l < L; ++l)
            {
                doppler[l] = draw_doppler(birth_rng[l], fmax);
                draws.push_back(doppler[l]);
            }

        Table<double> doppler_cells;
        if (record)
            doppler_cells = Table<double>(n, L);

        Rng amp_rng(substream_seed(cfg.rng_seed, kStreamAmplitude, 0));
        std::vector<double> z(L), y(L);
        for (std::size_t t = 0; t < n; ++t)
        {
            // Drawn every snapshot, alive or not, so the stream stays aligned.
            correlated_normals(corr.factor, amp_rng, z, y);

            for (std::size_t l = 0; l < L; ++l)
            {
                if (!states(t, l))
                    continue; // exact zero

                const bool birth = t == 0 || !states(t - 1, l);
                if (birth)
                {
                    phase[l] = birth_rng[l].uniform(params.phase_dist.lo, params.phase_dist.hi);
                    if (cfg.doppler_mode == DopplerMode::RedrawnPerBirth)
                    {
                        doppler[l] = draw_doppler(birth_rng[l], fmax);
                        draws.push_back(doppler[l]);
                    }
                }
                else
                {
                    phase[l] = std::remainder(phase[l] + kTwoPi * doppler[l] * dt, kTwoPi);
                }

                const double a = amp_scale[l] * std::exp(amp_offset[l] + ln.sigma * y[l]);
                trace.gains(t, l) = std::polar(a, phase[l]);
                if (record)
                    doppler_cells(t, l) = doppler[l];
            }
        }

        if (record)
        {
            record->states = std::move(states);
            record->doppler_draws = std::move(draws);
            record->doppler_hz = std::move(doppler_cells);
            record->correlation = std::move(corr);
        }
        return trace;
    }

    std::vector<cdouble> apply_to_signal(const CirTrace &trace, std::span<const cdouble> input, double sample_rate_hz)
    {
        check_trace(trace);
        if (input.empty())
            throw DomainError("apply_to_signal: input is empty");
        if (!(sample_rate_hz > 0.0))
            throw DomainError("apply_to_signal: sample rate must be positive");

        const double per_bin = sample_rate_hz * trace.meta.delay_resolution_s;
        if (!(std::round(per_bin) >= 1.0) || std::abs(per_bin - std::round(per_bin)) > 1e-6)
            throw DomainError("apply_to_signal: sample_rate * delay_resolution must be a positive integer");

        const std::size_t L = trace.n_taps();
        std::vector<std::size_t> delay_samples(L);
        for (std::size_t l = 0; l < L; ++l)
        {
            const double s = trace.delays_s[l] * sample_rate_hz;
            if (std::abs(s - std::round(s)) > 1e-6)
                throw DomainError("apply_to_signal: delay of tap " + std::to_string(l) +
                                  " is not a whole number of samples");
            delay_samples[l] = static_cast<std::size_t>(std::llround(s));
        }

        const double per_snapshot = sample_rate_hz * trace.snapshot_interval_s;
        const std::size_t last = trace.n_snapshots() - 1;
        std::vector<cdouble> out(input.size());
        for (std::size_t k = 0; k < input.size(); ++k)
        {
            const double s = std::floor(static_cast<double>(k) / per_snapshot);
            const std::size_t snap = s >= static_cast<double>(last) ? last : static_cast<std::size_t>(s);
            const auto g = trace.gains.row(snap);
            cdouble acc = 0.0;
            for (std::size_t l = 0; l < L; ++l)
                if (k >= delay_samples[l])
                    acc += g[l] * input[k - delay_samples[l]];
            out[k] = acc;
        }
        return out;
    }

    CirTrace add_noise(const CirTrace &trace, double noise_power, std::uint64_t seed)
    {
        if (!(noise_power >= 0.0))
            throw DomainError("add_noise: noise power must be >= 0");
        CirTrace out = trace;
        Rng rng(substream_seed(seed, kStreamNoise, 0));
        const double s = std::sqrt(noise_power / 2.0);
        for (auto &g : out.gains.data())
        {
            const double re = rng.normal(), im = rng.normal();
            g += cdouble(s * re, s * im);
        }
        out.meta.noiseless = false;
        return out;
    }

} // namespace mtdl
