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

#include "oracle_values.hpp"
#include "support.hpp"

#include <mtdl/errors.hpp>
#include <mtdl/generator.hpp>
#include <mtdl/rng.hpp>
#include <mtdl/stats.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace mtdl;

namespace
{
    std::vector<double> table1_linear()
    {
        std::vector<double> p;
        for (const auto &t : preset_5gr().taps)
            p.push_back(db_to_linear(t.mean_power_db));
        return p;
    }

    std::vector<double> table1_delays()
    {
        std::vector<double> d;
        for (const auto &t : preset_5gr().taps)
            d.push_back(t.delay_s);
        return d;
    }

    std::vector<double> lognormal_samples(double mu, double sigma, std::size_t n, std::uint64_t seed)
    {
        Rng rng(seed);
        std::vector<double> x(n);
        for (auto &v : x)
            v = std::exp(mu + sigma * rng.normal());
        return x;
    }
} // namespace

TEST_SUITE("stats")
{
    TEST_CASE("APDP of a constant tap is the 0 dB anchor")
    {
        const auto a = apdp(testing::constant_trace({{0.5, 0.0}}, 10), 10);
        REQUIRE(a.size() == 1);
        REQUIRE(a[0].powers_db[0].has_value());
        CHECK(*a[0].powers_db[0] == 0.0);
    }

    TEST_CASE("APDP of a 2:1 power pair")
    {
        const auto a = apdp(testing::constant_trace({{std::sqrt(2.0), 0.0}, {1.0, 0.0}}, 4), 2);
        REQUIRE(a.size() == 2);
        CHECK(*a[0].powers_db[0] == 0.0);
        CHECK(*a[0].powers_db[1] == doctest::Approx(oracle::kHalfPowerDb).epsilon(1e-12));
        CHECK(a[1].window_start == 2);
        CHECK(a[1].window_len == 2);
    }

    TEST_CASE("APDP censors never-present taps and drops partial windows")
    {
        const auto a = apdp(testing::constant_trace({{1.0, 0.0}, {0.0, 0.0}}, 5), 2);
        CHECK(a.size() == 2);
        CHECK_FALSE(a[0].powers_db[1].has_value());
    }

    TEST_CASE("APDP of a preset trace matches the tap powers")
    {
        const auto t = generate(preset_5gr(), {.n_snapshots = 100'000, .rng_seed = 31});
        const auto a = apdp(t, t.n_snapshots());
        REQUIRE(a.size() == 1);
        const auto p = preset_5gr();
        for (std::size_t l = 0; l < 5; ++l)
        {
            REQUIRE(a[0].powers_db[l].has_value());
            CHECK(std::abs(*a[0].powers_db[l] - p.taps[l].mean_power_db) <= 0.5);
        }
    }

    TEST_CASE("APDP domain errors")
    {
        const auto t = testing::constant_trace({{1.0, 0.0}}, 3);
        CHECK_THROWS_AS(apdp(t, 0), DomainError);
        CHECK_THROWS_AS(apdp(t, 4), DomainError);
        CirTrace empty;
        CHECK_THROWS_AS(apdp(empty, 1), DomainError);
    }

    TEST_CASE("RMS delay spread examples")
    {
        const std::vector<double> one{2.0}, at{300e-9};
        CHECK(*rms_delay_spread(one, at) == 0.0);

        const auto d = table1_delays();
        const auto p = table1_linear();
        CHECK(*rms_delay_spread(p, d) == doctest::Approx(oracle::kTable1RmsDs).epsilon(1e-12));

        const std::vector<double> two{1.0, 1.0}, twod{0.0, 100e-9};
        CHECK(*rms_delay_spread(two, twod) == doctest::Approx(oracle::kTwoEqualBinsRmsDs).epsilon(1e-12));
    }

    TEST_CASE("RMS delay spread censoring")
    {
        const std::vector<double> zeros(3, 0.0), d{0.0, 1e-7, 2e-7};
        CHECK_FALSE(rms_delay_spread(zeros, d).has_value());

        // Floor at -20 dB, threshold 6 dB: only bins above -14 dB survive.
        const std::vector<double> p{1.0, 0.03, 0.02};
        CHECK(*rms_delay_spread(p, d, 6.0, -20.0) == 0.0);
        CHECK(*rms_delay_spread(p, d, 6.0, -40.0) > 0.0);
        CHECK_FALSE(rms_delay_spread(p, d, 6.0, 10.0).has_value());

        const std::vector<double> shortd{0.0};
        CHECK_THROWS_AS(rms_delay_spread(p, shortd), DomainError);
    }

    TEST_CASE("RMS delay spread is shift invariant and scale equivariant")
    {
        Rng rng(77);
        for (int trial = 0; trial < 50; ++trial)
        {
            const std::size_t L = 2 + trial % 6;
            std::vector<double> p(L), d(L);
            double tau = 0.0;
            for (std::size_t i = 0; i < L; ++i)
            {
                p[i] = rng.uniform(0.01, 1.0);
                tau += rng.uniform(10e-9, 200e-9);
                d[i] = tau;
            }
            const double base = *rms_delay_spread(p, d);
            const double shift = rng.uniform(0.0, 1e-6);
            const double k = rng.uniform(0.1, 10.0);
            std::vector<double> ds(d), dk(d);
            for (std::size_t i = 0; i < L; ++i)
            {
                ds[i] += shift;
                dk[i] *= k;
            }
            CHECK(*rms_delay_spread(p, ds) == doctest::Approx(base).epsilon(1e-6));
            CHECK(*rms_delay_spread(p, dk) == doctest::Approx(k * base).epsilon(1e-9));
        }
    }

    TEST_CASE("RMS DS series of a preset trace stays inside the delay span")
    {
        const auto t = generate(preset_5gr(), {.n_snapshots = 100'000, .rng_seed = 2});
        const auto s = defined_values(rms_delay_spread_series(t, 1));
        CHECK(s.size() == t.n_snapshots());
        const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
        CHECK(*lo >= 0.0);
        CHECK(*hi <= 400e-9);
        const auto pdf = empirical_pdf(s, 50);
        CHECK(pdf.integral() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(pdf.bin_edges.front() >= 0.0);
        CHECK(pdf.bin_edges.back() <= 400e-9);
    }

    TEST_CASE("noise floor estimation")
    {
        auto t = testing::constant_trace({{1.0, 0.0}, {0.1, 0.0}}, 8);
        CHECK(std::isinf(estimate_noise_floor_db(t, 0, 8)));
        t.meta.noiseless = false;
        CHECK(estimate_noise_floor_db(t, 0, 8) == doctest::Approx(-20.0).epsilon(1e-12));
        CHECK(presence_threshold(-20.0, 6.0) == doctest::Approx(db_to_linear(-14.0)).epsilon(1e-12));
        CHECK(presence_threshold(-HUGE_VAL, 6.0) == 0.0);
    }

    TEST_CASE("fit_lognormal examples")
    {
        const std::vector<double> same(10, std::exp(-3.66));
        const auto d = fit_lognormal(same);
        CHECK(d.params.mu == doctest::Approx(-3.66).epsilon(1e-12));
        CHECK(d.params.sigma == 0.0);
        CHECK(d.degenerate);

        const std::vector<double> two{std::exp(1.0), std::exp(3.0)};
        const auto f = fit_lognormal(two);
        CHECK(f.params.mu == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(f.params.sigma == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(f.degenerate);

        const auto big = fit_lognormal(lognormal_samples(-3.66, 1.08, 100'000, 3));
        CHECK(std::abs(big.params.mu + 3.66) <= 0.02);
        CHECK(std::abs(big.params.sigma - 1.08) <= 0.02);
    }

    TEST_CASE("fit_lognormal errors")
    {
        const std::vector<double> neg{1.0, -1.0}, zero{0.0, 1.0}, one{1.0};
        CHECK_THROWS_AS(fit_lognormal(neg), DomainError);
        CHECK_THROWS_AS(fit_lognormal(zero), DomainError);
        CHECK_THROWS_AS(fit_lognormal(one), DomainError);
    }

    TEST_CASE("fit_lognormal error shrinks like 1/sqrt(n)")
    {
        // Average absolute mu error over repeated fits; 10x samples should cut
        // it by about sqrt(10).
        auto mean_error = [](std::size_t n) {
            double e = 0.0;
            for (std::uint64_t s = 0; s < 40; ++s)
                e += std::abs(fit_lognormal(lognormal_samples(-3.66, 1.08, n, 1000 + s)).params.mu + 3.66);
            return e / 40.0;
        };
        const double e3 = mean_error(1000), e4 = mean_error(10'000), e5 = mean_error(100'000);
        const double expected3 = 1.08 * std::sqrt(2.0 / M_PI) / std::sqrt(1000.0);
        CHECK(e3 == doctest::Approx(expected3).epsilon(0.35));
        CHECK(e3 / e4 == doctest::Approx(std::sqrt(10.0)).epsilon(0.5));
        CHECK(e4 / e5 == doctest::Approx(std::sqrt(10.0)).epsilon(0.5));
    }

    TEST_CASE("correlation of a perfectly dependent pair")
    {
        Table<double> a(50, 2);
        Rng rng(1);
        for (std::size_t r = 0; r < 50; ++r)
        {
            a(r, 0) = rng.uniform(1.0, 2.0);
            a(r, 1) = 2.0 * a(r, 0);
        }
        const auto c = correlation_matrix(a);
        CHECK(c.coefficients[0][1] == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("correlation against the reference value")
    {
        const std::vector<double> x{1, 2, 4, 7, 11}, y{2, 1, 5, 6, 13};
        Table<double> a(5, 2);
        for (std::size_t r = 0; r < 5; ++r)
        {
            a(r, 0) = x[r];
            a(r, 1) = y[r];
        }
        CHECK(correlation_matrix(a).coefficients[0][1] == doctest::Approx(oracle::kPearsonSmall).epsilon(1e-12));
    }

    TEST_CASE("independent columns are uncorrelated")
    {
        Table<double> a(100'000, 3);
        Rng rng(5);
        for (auto &v : a.data())
            v = rng.uniform();
        const auto c = correlation_matrix(a).coefficients;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                if (i != j)
                    CHECK(std::abs(c[i][j]) <= 0.02);
    }

    TEST_CASE("correlation is symmetric with unit diagonal and bounded")
    {
        Rng rng(9);
        for (int trial = 0; trial < 30; ++trial)
        {
            const std::size_t n = 3 + trial, L = 1 + trial % 5;
            Table<double> a(n, L);
            for (auto &v : a.data())
                v = rng.uniform(0.1, 5.0);
            const auto c = correlation_matrix(a).coefficients;
            for (std::size_t i = 0; i < L; ++i)
            {
                CHECK(c[i][i] == 1.0);
                for (std::size_t j = 0; j < L; ++j)
                {
                    CHECK(c[i][j] == c[j][i]);
                    CHECK(c[i][j] >= -1.0);
                    CHECK(c[i][j] <= 1.0);
                }
            }
        }
    }

    TEST_CASE("zero-variance columns are flagged")
    {
        Table<double> a(4, 2);
        for (std::size_t r = 0; r < 4; ++r)
        {
            a(r, 0) = 1.0 + r;
            a(r, 1) = 3.0;
        }
        const auto c = correlation_matrix(a);
        CHECK_FALSE(c.undefined[0]);
        CHECK(c.undefined[1]);
        CHECK_THROWS_AS(correlation_matrix(Table<double>(1, 2, 1.0)), DomainError);
    }

    TEST_CASE("pairwise-complete correlation uses joint presence only")
    {
        Table<double> a(6, 2);
        Table<std::uint8_t> present(6, 2, 1);
        const double x[] = {1, 2, 3, 4, 5, 6};
        for (std::size_t r = 0; r < 6; ++r)
        {
            a(r, 0) = x[r];
            a(r, 1) = r < 4 ? 2 * x[r] : 100.0 - 30 * x[r];
        }
        present(4, 1) = present(5, 1) = 0;
        const auto c = correlation_matrix(a, present);
        CHECK(c.coefficients[0][1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.pair_counts(0, 1) == 4);
        CHECK(c.pair_counts(0, 0) == 6);
    }

    TEST_CASE("empirical PDF of constant samples")
    {
        const std::vector<double> x(7, 3.0);
        const auto pdf = empirical_pdf(x, 4);
        const double width = pdf.bin_edges[1] - pdf.bin_edges[0];
        CHECK(std::count_if(pdf.densities.begin(), pdf.densities.end(), [](double d) { return d > 0; }) == 1);
        CHECK(*std::max_element(pdf.densities.begin(), pdf.densities.end()) ==
              doctest::Approx(1.0 / width).epsilon(1e-12));
        CHECK(pdf.n_samples == 7);
    }

    TEST_CASE("empirical PDF of uniform samples is flat")
    {
        Rng rng(4);
        std::vector<double> x(1'000'000);
        for (auto &v : x)
            v = rng.uniform();
        const auto pdf = empirical_pdf(x, 10);
        for (double d : pdf.densities)
            CHECK(std::abs(d - 1.0) <= 0.01);
    }

    TEST_CASE("empirical PDF integrates to one with increasing edges")
    {
        Rng rng(12);
        for (int trial = 0; trial < 40; ++trial)
        {
            std::vector<double> x(1 + trial * 13);
            for (auto &v : x)
                v = std::exp(rng.normal() * 3.0) - rng.uniform(0.0, 2.0);
            const auto pdf = empirical_pdf(x, 1 + trial % 60);
            CHECK(pdf.integral() == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(std::adjacent_find(pdf.bin_edges.begin(), pdf.bin_edges.end(), std::greater_equal<>{}) ==
                  pdf.bin_edges.end());
        }
        CHECK_THROWS_AS(empirical_pdf(std::vector<double>{}, 3), DomainError);
        CHECK_THROWS_AS(empirical_pdf(std::vector<double>{1.0}, 0), DomainError);
    }

    TEST_CASE("distribution distance examples")
    {
        const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
        const auto same = distribution_distance(a, a);
        CHECK(same.ks_stat == 0.0);
        CHECK(same.mean_diff == 0.0);
        CHECK(same.std_diff == 0.0);

        const std::vector<double> far{10.0, 11.0};
        CHECK(distribution_distance(a, far).ks_stat == 1.0);

        const std::vector<double> b{2.5, 3.5, 4.5, 5.5, 6.5};
        const auto d = distribution_distance(a, b);
        CHECK(d.ks_stat == doctest::Approx(oracle::kKsSmall).epsilon(1e-12));
        CHECK(d.mean_diff == doctest::Approx(2.5 - 4.5).epsilon(1e-12));

        const std::vector<double> ta{1.0, 1.0, 2.0, 2.0}, tb{1.0, 2.0, 2.0, 2.0};
        CHECK(distribution_distance(ta, tb).ks_stat == doctest::Approx(oracle::kKsTies).epsilon(1e-12));
        CHECK_THROWS_AS(distribution_distance(a, std::vector<double>{}), DomainError);
    }

    TEST_CASE("one-sample KS against the standard normal")
    {
        const std::vector<double> x{-1.0, 0.0, 0.5, 2.0};
        CHECK(ks_against_normal(x, 0.0, 1.0) == doctest::Approx(oracle::kKsNormalSmall).epsilon(1e-9));
    }
}
