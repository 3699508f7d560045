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
#include <mtdl/estimator.hpp>
#include <mtdl/generator.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mtdl
{
    StateAssignment assign_states(const CirTrace &trace, double threshold_db)
    {
        StateAssignment out;
        out.noise_floor_db = estimate_noise_floor_db(trace, 0, trace.n_snapshots());
        const double thr = presence_threshold(out.noise_floor_db, threshold_db);
        out.states = Table<std::uint8_t>(trace.n_snapshots(), trace.n_taps());
        for (std::size_t t = 0; t < trace.n_snapshots(); ++t)
            for (std::size_t l = 0; l < trace.n_taps(); ++l)
                out.states(t, l) = std::norm(trace.gains(t, l)) > thr ? 1 : 0;
        return out;
    }

    namespace
    {
        // Smallest sigma reported for a degenerate (point mass) amplitude fit,
        // so the recovered parameter set still validates.
        constexpr double kDegenerateSigma = 1e-12;
    } // namespace

    EstimatedModel estimate_model(const CirTrace &trace, double threshold_db, double resolution_s,
                                  const EstimatorOptions &opts)
    {
        check_trace(trace);
        if (trace.n_snapshots() < 2)
            throw DomainError("estimate_model: trace needs at least 2 snapshots");
        if (!(resolution_s > 0.0))
            throw DomainError("estimate_model: resolution must be positive");

        const std::size_t n = trace.n_snapshots();
        const std::size_t n_bins = trace.n_taps();

        EstimatedModel model;
        auto &diag = model.diagnostics;

        // Step 4 first: presence of each delay bin in each snapshot.
        const auto sa = assign_states(trace, threshold_db);
        diag.noise_floor_db = sa.noise_floor_db;

        std::vector<double> occupancy(n_bins, 0.0);
        for (std::size_t l = 0; l < n_bins; ++l)
        {
            std::size_t alive = 0;
            for (std::size_t t = 0; t < n; ++t)
                alive += sa.states(t, l);
            occupancy[l] = static_cast<double>(alive) / static_cast<double>(n);
        }

        // Step 1: tap count. The RMS-DS rule is a lower bound; bins that are
        // regularly alive are resolvable taps even when the delay spread of
        // a short profile cannot reach them.
        const auto rms = defined_values(rms_delay_spread_series(trace, std::min(opts.rms_window, n), threshold_db));
        diag.max_rms_ds_s = rms.empty() ? 0.0 : *std::max_element(rms.begin(), rms.end());
        diag.tap_count_rms_rule = diag.max_rms_ds_s > 0.0 ? tap_count(diag.max_rms_ds_s, resolution_s) : 1;
        diag.tap_count_occupancy = 0;
        for (std::size_t l = 0; l < n_bins; ++l)
            if (occupancy[l] >= opts.min_occupancy)
                diag.tap_count_occupancy = l + 1;
        const std::size_t span =
            std::min(n_bins, std::max(static_cast<std::size_t>(diag.tap_count_rms_rule), diag.tap_count_occupancy));

        std::vector<std::size_t> kept;
        for (std::size_t l = 0; l < span; ++l)
        {
            if (occupancy[l] > 0.0)
                kept.push_back(l);
            else
                diag.dropped_bins.push_back(l);
        }
        if (kept.empty())
            throw DomainError("estimate_model: no delay bin is ever above the threshold");
        const std::size_t L = kept.size();

        // Step 2: amplitudes and alive-conditioned mean powers.
        Table<double> amps(n, L), log_amps(n, L);
        Table<std::uint8_t> present(n, L);
        std::vector<double> pooled;
        std::vector<double> power_sum(L, 0.0);
        std::vector<std::size_t> alive_count(L, 0);
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t k = 0; k < L; ++k)
            {
                const std::size_t l = kept[k];
                if (!sa.states(t, l))
                    continue;
                const double a = std::abs(trace.gains(t, l));
                amps(t, k) = a;
                log_amps(t, k) = std::log(a);
                present(t, k) = 1;
                pooled.push_back(a);
                power_sum[k] += a * a;
                ++alive_count[k];
            }

        auto &params = model.params;
        params.delay_resolution_s = resolution_s;
        params.snapshot_interval_s = trace.snapshot_interval_s;
        // Phase is not identifiable once Doppler rotation runs; the model's
        // birth-phase law is kept.
        params.phase_dist = {0.0, std::numbers::pi};
        // Step 3: Doppler bound from carrier and speed, distribution uniform.
        params.max_doppler_hz = max_doppler(opts.speed_mps, trace.meta.carrier_hz);

        diag.n_amplitude_samples = pooled.size();
        if (pooled.size() >= 2)
        {
            const auto fit = fit_lognormal(pooled);
            diag.pooled_fit = fit.params;
            if (!fit.degenerate)
            {
                std::vector<double> logs(pooled.size());
                std::transform(pooled.begin(), pooled.end(), logs.begin(), [](double a) { return std::log(a); });
                diag.lognormal_ks = ks_against_normal(logs, fit.params.mu, fit.params.sigma);
            }
        }
        else
        {
            diag.pooled_fit = {std::log(pooled.front()), 0.0};
        }

        // Location from the pooled fit. The spread is measured around each
        // tap's own mean: with unequal tap powers the pooled spread mixes the
        // power profile into the shape, and a generator fed with it would
        // widen the amplitude law on every round trip. With equal tap means
        // both spreads coincide.
        {
            std::vector<double> tap_mean(L, 0.0);
            for (std::size_t k = 0; k < L; ++k)
            {
                for (std::size_t t = 0; t < n; ++t)
                    if (present(t, k))
                        tap_mean[k] += log_amps(t, k);
                tap_mean[k] /= static_cast<double>(alive_count[k]);
            }
            double ss = 0.0;
            for (std::size_t t = 0; t < n; ++t)
                for (std::size_t k = 0; k < L; ++k)
                    if (present(t, k))
                    {
                        const double d = log_amps(t, k) - tap_mean[k];
                        ss += d * d;
                    }
            params.amplitude_dist.mu = diag.pooled_fit.mu;
            params.amplitude_dist.sigma = std::sqrt(ss / static_cast<double>(pooled.size()));
        }
        if (params.amplitude_dist.sigma <= 0.0)
            params.amplitude_dist.sigma = kDegenerateSigma;

        const double ref_power = power_sum[0] / static_cast<double>(alive_count[0]);
        const double d0 = trace.delays_s[kept[0]];
        for (std::size_t k = 0; k < L; ++k)
        {
            const std::size_t l = kept[k];
            TapEntry tap;
            tap.delay_s = std::round((trace.delays_s[l] - d0) / resolution_s) * resolution_s;

            TapDiagnostics td;
            td.bin = l;
            td.occupancy = occupancy[l];
            td.censoring_rate = 1.0 - occupancy[l];

            if (k == 0)
                tap.mean_power_db = 0.0;
            else
            {
                tap.mean_power_db = linear_to_db(power_sum[k] / static_cast<double>(alive_count[k]) / ref_power);
                if (tap.mean_power_db > 0.0)
                {
                    tap.mean_power_db = 0.0;
                    td.power_clamped = true;
                }
            }

            // Step 4: chain per tap.
            std::vector<std::uint8_t> states(n);
            for (std::size_t t = 0; t < n; ++t)
                states[t] = sa.states(t, l);
            const auto est = estimate_chain(states);
            tap.chain = est.chain;
            // A tap never seen dead is written the way the published table
            // writes its always-on tap: immediate rebirth (p00 = 0).
            if (est.row0_undefined && !est.row1_undefined)
                tap.chain.p00 = 0.0;
            td.counts = est.counts;
            td.row0_undefined = est.row0_undefined;
            td.row1_undefined = est.row1_undefined;

            std::vector<double> alive_amps;
            for (std::size_t t = 0; t < n; ++t)
                if (present(t, k))
                    alive_amps.push_back(amps(t, k));
            if (alive_amps.size() >= 2)
                td.ln_fit = fit_lognormal(alive_amps).params;
            else
                td.ln_fit = {std::log(alive_amps.front()), 0.0};

            params.taps.push_back(tap);
            diag.taps.push_back(td);
        }

        // Step 5: tap correlation, pairwise-complete over alive snapshots.
        // The ln-domain matrix drives the generator; Pearson on linear
        // amplitudes is kept as a diagnostic.
        const auto ln_corr = correlation_matrix(log_amps, present);
        const auto lin_corr = correlation_matrix(amps, present);
        params.correlation = ln_corr.coefficients;
        diag.linear_correlation = lin_corr.coefficients;
        diag.correlation_pair_counts = ln_corr.pair_counts;

        require_valid(params);
        return model;
    }

} // namespace mtdl
