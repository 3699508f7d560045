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

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace mtdl
{
    inline constexpr double kDefaultThresholdDb = 6.0;

    // Average power delay profile over one window. Each tap is averaged over
    // the snapshots where it clears the threshold; a tap that never does is
    // censored (nullopt).
    struct Apdp
    {
        std::vector<std::optional<double>> powers_db; // 0 dB at the strongest tap
        std::size_t window_start = 0;
        std::size_t window_len = 0;
        double noise_floor_db = 0.0;
    };

    // -inf for noiseless traces; otherwise the median power of the last
    // delay bin over the window, in dB.
    double estimate_noise_floor_db(const CirTrace &trace, std::size_t start, std::size_t len);

    // Linear power threshold a cell must exceed to count as present.
    double presence_threshold(double noise_floor_db, double threshold_db);

    // Non-overlapping windows; a trailing partial window is dropped.
    std::vector<Apdp> apdp(const CirTrace &trace, std::size_t window_len, double threshold_db = kDefaultThresholdDb);

    // Unconditional mean |g|^2 per tap over [start, start + len).
    std::vector<double> mean_pdp(const CirTrace &trace, std::size_t start, std::size_t len);

    // Second central moment of delay over bins whose power exceeds
    // noise floor + threshold. nullopt when every bin is censored.
    std::optional<double> rms_delay_spread(std::span<const double> pdp_linear, std::span<const double> delays_s,
                                           double threshold_db = kDefaultThresholdDb,
                                           double noise_floor_db = -HUGE_VAL);

    // RMS delay spread of each non-overlapping window's mean PDP.
    std::vector<std::optional<double>> rms_delay_spread_series(const CirTrace &trace, std::size_t window_len,
                                                               double threshold_db = kDefaultThresholdDb);

    struct LognormalFit
    {
        LognormalParams params;
        bool degenerate = false; // sigma == 0
        std::size_t n_samples = 0;
    };

    // ML fit: mu = mean(ln x), sigma = population std of ln x.
    LognormalFit fit_lognormal(std::span<const double> samples);

    struct CorrelationResult
    {
        Matrix coefficients;
        std::vector<bool> undefined;        // per column: zero variance or too few samples
        Table<std::size_t> pair_counts;     // samples used for each entry
    };

    // Pearson correlation between columns. Undefined rows/cols are reported
    // with 0 off-diagonal and flagged.
    CorrelationResult correlation_matrix(const Table<double> &samples);

    // Pairwise-complete variant: entry (i, j) uses only rows where both
    // columns are present.
    CorrelationResult correlation_matrix(const Table<double> &samples, const Table<std::uint8_t> &present);

    struct EmpiricalPdf
    {
        std::vector<double> bin_edges;
        std::vector<double> densities;
        std::size_t n_samples = 0;

        double integral() const;
    };

    EmpiricalPdf empirical_pdf(std::span<const double> samples, std::size_t n_bins);

    struct DistributionDistance
    {
        double ks_stat = 0.0;
        double mean_diff = 0.0; // mean(a) - mean(b)
        double std_diff = 0.0;  // std(a) - std(b)
    };

    DistributionDistance distribution_distance(std::span<const double> a, std::span<const double> b);

    // One-sample KS statistic of samples against N(mu, sigma^2).
    double ks_against_normal(std::span<const double> samples, double mu, double sigma);

    double mean(std::span<const double> x);
    double variance(std::span<const double> x); // population

    std::vector<double> defined_values(const std::vector<std::optional<double>> &series);

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace mtdl
