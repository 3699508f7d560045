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
#include <mtdl/stats.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mtdl
{
    double mean(std::span<const double> x)
    {
        if (x.empty())
            return std::numeric_limits<double>::quiet_NaN();
        return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    }

    double variance(std::span<const double> x)
    {
        if (x.empty())
            return std::numeric_limits<double>::quiet_NaN();
        const double m = mean(x);
        double acc = 0.0;
        for (double v : x)
            acc += (v - m) * (v - m);
        return acc / static_cast<double>(x.size());
    }

    std::vector<double> defined_values(const std::vector<std::optional<double>> &series)
    {
        std::vector<double> out;
        out.reserve(series.size());
        for (const auto &v : series)
            if (v)
                out.push_back(*v);
        return out;
    }

    double estimate_noise_floor_db(const CirTrace &trace, std::size_t start, std::size_t len)
    {
        if (trace.meta.noiseless || trace.n_taps() == 0 || len == 0)
            return -HUGE_VAL;
        const std::size_t last = trace.n_taps() - 1;
        std::vector<double> p;
        p.reserve(len);
        for (std::size_t t = start; t < start + len && t < trace.n_snapshots(); ++t)
            p.push_back(std::norm(trace.gains(t, last)));
        if (p.empty())
            return -HUGE_VAL;
        const auto mid = p.begin() + static_cast<std::ptrdiff_t>(p.size() / 2);
        std::nth_element(p.begin(), mid, p.end());
        double median = *mid;
        if (p.size() % 2 == 0)
        {
            const double below = *std::max_element(p.begin(), mid);
            median = 0.5 * (median + below);
        }
        return median > 0.0 ? linear_to_db(median) : -HUGE_VAL;
    }

    double presence_threshold(double noise_floor_db, double threshold_db)
    {
        if (std::isinf(noise_floor_db) && noise_floor_db < 0.0)
            return 0.0;
        return db_to_linear(noise_floor_db + threshold_db);
    }

    std::vector<Apdp> apdp(const CirTrace &trace, std::size_t window_len, double threshold_db)
    {
        if (trace.n_snapshots() == 0 || trace.n_taps() == 0)
            throw DomainError("apdp: trace is empty");
        if (window_len == 0 || window_len > trace.n_snapshots())
            throw DomainError("apdp: window length must be in [1, n_snapshots]");

        const std::size_t L = trace.n_taps();
        std::vector<Apdp> out;
        for (std::size_t start = 0; start + window_len <= trace.n_snapshots(); start += window_len)
        {
            Apdp a;
            a.window_start = start;
            a.window_len = window_len;
            a.noise_floor_db = estimate_noise_floor_db(trace, start, window_len);
            const double thr = presence_threshold(a.noise_floor_db, threshold_db);

            std::vector<double> sum(L, 0.0);
            std::vector<std::size_t> count(L, 0);
            for (std::size_t t = start; t < start + window_len; ++t)
                for (std::size_t l = 0; l < L; ++l)
                {
                    const double p = std::norm(trace.gains(t, l));
                    if (p > thr)
                    {
                        sum[l] += p;
                        ++count[l];
                    }
                }

            double peak = 0.0;
            for (std::size_t l = 0; l < L; ++l)
                if (count[l])
                    peak = std::max(peak, sum[l] / static_cast<double>(count[l]));

            a.powers_db.resize(L);
            for (std::size_t l = 0; l < L; ++l)
                if (count[l])
                    a.powers_db[l] = linear_to_db(sum[l] / static_cast<double>(count[l]) / peak);
            out.push_back(std::move(a));
        }
        return out;
    }

    std::vector<double> mean_pdp(const CirTrace &trace, std::size_t start, std::size_t len)
    {
        if (len == 0 || start + len > trace.n_snapshots())
            throw DomainError("mean_pdp: window outside the trace");
        std::vector<double> p(trace.n_taps(), 0.0);
        for (std::size_t t = start; t < start + len; ++t)
            for (std::size_t l = 0; l < p.size(); ++l)
                p[l] += std::norm(trace.gains(t, l));
        for (auto &v : p)
            v /= static_cast<double>(len);
        return p;
    }

    std::optional<double> rms_delay_spread(std::span<const double> pdp_linear, std::span<const double> delays_s,
                                           double threshold_db, double noise_floor_db)
    {
        if (pdp_linear.empty() || pdp_linear.size() != delays_s.size())
            throw DomainError("rms_delay_spread: power and delay vectors must be nonempty and equal length");

        const double thr = presence_threshold(noise_floor_db, threshold_db);
        double p_sum = 0.0, first = 0.0;
        for (std::size_t i = 0; i < pdp_linear.size(); ++i)
            if (pdp_linear[i] > thr)
            {
                p_sum += pdp_linear[i];
                first += pdp_linear[i] * delays_s[i];
            }
        if (!(p_sum > 0.0))
            return std::nullopt;

        const double mean_delay = first / p_sum;
        double second = 0.0;
        for (std::size_t i = 0; i < pdp_linear.size(); ++i)
            if (pdp_linear[i] > thr)
            {
                const double d = delays_s[i] - mean_delay;
                second += pdp_linear[i] * d * d;
            }
        return std::sqrt(std::max(0.0, second / p_sum));
    }

    std::vector<std::optional<double>> rms_delay_spread_series(const CirTrace &trace, std::size_t window_len,
                                                               double threshold_db)
    {
        if (window_len == 0 || window_len > trace.n_snapshots())
            throw DomainError("rms_delay_spread_series: window length must be in [1, n_snapshots]");
        std::vector<std::optional<double>> out;
        out.reserve(trace.n_snapshots() / window_len);
        for (std::size_t start = 0; start + window_len <= trace.n_snapshots(); start += window_len)
        {
            const double floor_db = estimate_noise_floor_db(trace, start, window_len);
            const auto pdp = mean_pdp(trace, start, window_len);
            out.push_back(rms_delay_spread(pdp, trace.delays_s, threshold_db, floor_db));
        }
        return out;
    }

    LognormalFit fit_lognormal(std::span<const double> samples)
    {
        if (samples.size() < 2)
            throw DomainError("fit_lognormal: at least 2 samples required");
        std::vector<double> logs;
        logs.reserve(samples.size());
        for (double x : samples)
        {
            if (!(x > 0.0))
                throw DomainError("fit_lognormal: samples must be positive");
            logs.push_back(std::log(x));
        }

        LognormalFit fit;
        fit.n_samples = samples.size();
        fit.params.mu = mean(logs);
        fit.params.sigma = std::sqrt(variance(logs));
        if (fit.params.sigma <= 1e-12 * std::max(1.0, std::abs(fit.params.mu)))
        {
            fit.params.sigma = 0.0;
            fit.degenerate = true;
        }
        return fit;
    }

    CorrelationResult correlation_matrix(const Table<double> &samples, const Table<std::uint8_t> &present)
    {
        const std::size_t n = samples.rows(), L = samples.cols();
        if (present.rows() != n || present.cols() != L)
            throw DomainError("correlation_matrix: presence mask shape mismatch");

        CorrelationResult out;
        out.coefficients.assign(L, std::vector<double>(L, 0.0));
        out.undefined.assign(L, false);
        out.pair_counts = Table<std::size_t>(L, L, 0);

        auto pair_stats = [&](std::size_t i, std::size_t j, double &vi, double &vj, double &cov) -> std::size_t
        {
            double si = 0.0, sj = 0.0;
            std::size_t m = 0;
            for (std::size_t t = 0; t < n; ++t)
                if (present(t, i) && present(t, j))
                {
                    si += samples(t, i);
                    sj += samples(t, j);
                    ++m;
                }
            vi = vj = cov = 0.0;
            if (m < 2)
                return m;
            const double mi = si / static_cast<double>(m), mj = sj / static_cast<double>(m);
            for (std::size_t t = 0; t < n; ++t)
                if (present(t, i) && present(t, j))
                {
                    const double di = samples(t, i) - mi, dj = samples(t, j) - mj;
                    vi += di * di;
                    vj += dj * dj;
                    cov += di * dj;
                }
            return m;
        };

        for (std::size_t i = 0; i < L; ++i)
        {
            double vi, vj, cov;
            const std::size_t m = pair_stats(i, i, vi, vj, cov);
            out.pair_counts(i, i) = m;
            out.undefined[i] = m < 2 || !(vi > 0.0);
            out.coefficients[i][i] = 1.0;
        }

        for (std::size_t i = 0; i < L; ++i)
            for (std::size_t j = i + 1; j < L; ++j)
            {
                double vi, vj, cov;
                const std::size_t m = pair_stats(i, j, vi, vj, cov);
                out.pair_counts(i, j) = out.pair_counts(j, i) = m;
                double r = 0.0;
                if (!out.undefined[i] && !out.undefined[j] && m >= 2 && vi > 0.0 && vj > 0.0)
                    r = std::clamp(cov / std::sqrt(vi * vj), -1.0, 1.0);
                out.coefficients[i][j] = out.coefficients[j][i] = r;
            }
        return out;
    }

    CorrelationResult correlation_matrix(const Table<double> &samples)
    {
        if (samples.rows() < 2)
            throw DomainError("correlation_matrix: at least 2 rows required");
        return correlation_matrix(samples, Table<std::uint8_t>(samples.rows(), samples.cols(), 1));
    }

    double EmpiricalPdf::integral() const
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < densities.size(); ++i)
            acc += densities[i] * (bin_edges[i + 1] - bin_edges[i]);
        return acc;
    }

    EmpiricalPdf empirical_pdf(std::span<const double> samples, std::size_t n_bins)
    {
        if (samples.empty())
            throw DomainError("empirical_pdf: no samples");
        if (n_bins == 0)
            throw DomainError("empirical_pdf: n_bins must be >= 1");

        auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
        double lo = *lo_it, hi = *hi_it;
        if (!(hi > lo))
        {
            lo -= 0.5;
            hi += 0.5;
        }

        EmpiricalPdf pdf;
        pdf.n_samples = samples.size();
        pdf.bin_edges.resize(n_bins + 1);
        const double width = (hi - lo) / static_cast<double>(n_bins);
        for (std::size_t i = 0; i < n_bins; ++i)
            pdf.bin_edges[i] = lo + width * static_cast<double>(i);
        pdf.bin_edges[n_bins] = hi;

        std::vector<std::size_t> counts(n_bins, 0);
        for (double x : samples)
        {
            auto b = static_cast<std::size_t>(std::max(0.0, std::floor((x - lo) / width)));
            counts[std::min(b, n_bins - 1)]++;
        }

        pdf.densities.resize(n_bins);
        const double n = static_cast<double>(samples.size());
        for (std::size_t i = 0; i < n_bins; ++i)
            pdf.densities[i] = static_cast<double>(counts[i]) / (n * (pdf.bin_edges[i + 1] - pdf.bin_edges[i]));
        return pdf;
    }

    DistributionDistance distribution_distance(std::span<const double> a, std::span<const double> b)
    {
        if (a.empty() || b.empty())
            throw DomainError("distribution_distance: both sample sets must be nonempty");

        std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());

        const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
        std::size_t i = 0, j = 0;
        double d = 0.0;
        while (i < x.size() && j < y.size())
        {
            const double v = std::min(x[i], y[j]);
            while (i < x.size() && x[i] == v)
                ++i;
            while (j < y.size() && y[j] == v)
                ++j;
            d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
        }

        DistributionDistance out;
        out.ks_stat = d;
        out.mean_diff = mean(x) - mean(y);
        out.std_diff = std::sqrt(variance(x)) - std::sqrt(variance(y));
        return out;
    }

    double ks_against_normal(std::span<const double> samples, double mu, double sigma)
    {
        if (samples.empty() || !(sigma > 0.0))
            return std::numeric_limits<double>::quiet_NaN();
        std::vector<double> x(samples.begin(), samples.end());
        std::sort(x.begin(), x.end());
        const double n = static_cast<double>(x.size());
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const double F = 0.5 * std::erfc(-(x[i] - mu) / (sigma * std::sqrt(2.0)));
            d = std::max({d, F - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - F});
        }
        return d;
    }

} // namespace mtdl
