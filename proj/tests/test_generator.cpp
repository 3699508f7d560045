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
#include <mtdl/markov.hpp>
#include <mtdl/stats.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace mtdl;

namespace
{
    Matrix identity(std::size_t n)
    {
        Matrix m(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            m[i][i] = 1.0;
        return m;
    }

    Table<double> ln_of(const Table<double> &a)
    {
        Table<double> out(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.data().size(); ++i)
            out.data()[i] = std::log(a.data()[i]);
        return out;
    }

    // Every tap always alive.
    TapParameterSet all_alive(TapParameterSet p)
    {
        for (auto &t : p.taps)
            t.chain = {0.0, 1.0, 1.0};
        return p;
    }
} // namespace

TEST_SUITE("generator")
{
    TEST_CASE("independent copula columns are uncorrelated")
    {
        const auto a = correlated_lognormal_draw(identity(5), {-3.66, 1.08}, 100'000, 21);
        const auto c = correlation_matrix(ln_of(a)).coefficients;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                if (i != j)
                    CHECK(std::abs(c[i][j]) <= 0.02);
    }

    TEST_CASE("copula reproduces the preset correlation and marginals")
    {
        const auto p = preset_5gr();
        const auto a = correlated_lognormal_draw(p.correlation, p.amplitude_dist, 100'000, 22);
        const auto lna = ln_of(a);
        const auto c = correlation_matrix(lna).coefficients;
        CHECK(std::abs(c[0][2] - 0.7733) <= 0.05);
        for (std::size_t l = 0; l < 5; ++l)
        {
            const auto col = lna.column(l);
            CHECK(std::abs(mean(col) + 3.66) <= 0.02);
            CHECK(std::abs(std::sqrt(variance(col)) - 1.08) <= 0.02);
        }
    }

    TEST_CASE("preset correlation needs no repair")
    {
        CHECK(oracle::kTable2MinEigenvalue > 0.0);
        const auto f = factor_correlation(preset_5gr().correlation);
        CHECK_FALSE(f.repaired);
        CHECK(f.target == preset_5gr().correlation);
    }

    TEST_CASE("indefinite correlation is repaired to a unit-diagonal PSD matrix")
    {
        const Matrix bad{{1.0, 0.9, -0.9}, {0.9, 1.0, 0.9}, {-0.9, 0.9, 1.0}};
        const auto f = factor_correlation(bad);
        CHECK(f.repaired);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(f.target[i][i] == doctest::Approx(1.0).epsilon(1e-12));
        // B * B^T reproduces the repaired target.
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
            {
                double s = 0.0;
                for (std::size_t k = 0; k < 3; ++k)
                    s += f.factor[i][k] * f.factor[j][k];
                CHECK(s == doctest::Approx(f.target[i][j]).epsilon(1e-9));
            }
        const auto a = correlated_lognormal_draw(bad, {0.0, 1.0}, 1000, 1);
        CHECK(a.rows() == 1000);
    }

    TEST_CASE("malformed correlation matrices are domain errors")
    {
        CHECK_THROWS_AS(factor_correlation({{1.0, 0.2}}), DomainError);
        CHECK_THROWS_AS(factor_correlation({{1.0, 0.2}, {0.2, 0.9}}), DomainError);
        CHECK_THROWS_AS(correlated_lognormal_draw({{2.0}}, {0.0, 1.0}, 10, 1), DomainError);
    }

    TEST_CASE("tap 1 of the preset is present in every snapshot")
    {
        const auto t = generate(preset_5gr(), {.n_snapshots = 5000, .rng_seed = 1});
        for (std::size_t r = 0; r < t.n_snapshots(); ++r)
            CHECK_FALSE(t.gains(r, 0) == cdouble{});
    }

    TEST_CASE("zero Doppler freezes the phase of always-alive taps")
    {
        auto p = all_alive(preset_5gr());
        p.max_doppler_hz = 0.0;
        const auto t = generate(p, {.n_snapshots = 200, .rng_seed = 5});
        for (std::size_t l = 0; l < t.n_taps(); ++l)
            for (std::size_t r = 1; r < t.n_snapshots(); ++r)
                CHECK(std::arg(t.gains(r, l)) == doctest::Approx(std::arg(t.gains(0, l))).epsilon(1e-12));
    }

    TEST_CASE("occupancy follows the stationary distribution")
    {
        const auto p = preset_5gr();
        GenerationRecord rec;
        generate(p, {.n_snapshots = 100'000, .rng_seed = 8}, &rec);
        for (std::size_t l = 0; l < 5; ++l)
        {
            const auto col = rec.states.column(l);
            const double occ = static_cast<double>(std::count(col.begin(), col.end(), 1)) / col.size();
            CHECK(std::abs(occ - stationary(p.taps[l].chain)) <= 0.02);
        }
    }

    TEST_CASE("dead taps are exact zeros and alive taps are not")
    {
        GenerationRecord rec;
        const auto t = generate(preset_5gr(), {.n_snapshots = 20'000, .rng_seed = 13}, &rec);
        bool consistent = true;
        for (std::size_t r = 0; r < t.n_snapshots(); ++r)
            for (std::size_t l = 0; l < t.n_taps(); ++l)
            {
                const auto g = t.gains(r, l);
                if (rec.states(r, l) == 0)
                    consistent &= g.real() == 0.0 && g.imag() == 0.0 && !std::signbit(g.real());
                else
                    consistent &= std::abs(g) > 0.0;
            }
        CHECK(consistent);
    }

    TEST_CASE("power-scaled mode reproduces the tap powers")
    {
        const auto p = preset_5gr();
        GenerationRecord rec;
        const auto t = generate(p, {.n_snapshots = 100'000, .rng_seed = 17}, &rec);
        for (std::size_t l = 0; l < 5; ++l)
        {
            double sum = 0.0;
            std::size_t alive = 0;
            for (std::size_t r = 0; r < t.n_snapshots(); ++r)
                if (rec.states(r, l))
                {
                    sum += std::norm(t.gains(r, l));
                    ++alive;
                }
            CHECK(std::abs(linear_to_db(sum / alive) - p.taps[l].mean_power_db) <= 0.5);
        }
    }

    TEST_CASE("common-lognormal mean square matches the analytic value")
    {
        auto p = all_alive(preset_5gr());
        const auto t = generate(p, {.n_snapshots = 100'000,
                                    .rng_seed = 2,
                                    .amplitude_mode = AmplitudeMode::CommonLognormal});
        double sum = 0.0;
        for (std::size_t r = 0; r < t.n_snapshots(); ++r)
            sum += std::norm(t.gains(r, 0));
        CHECK(linear_to_db(sum / t.n_snapshots()) ==
              doctest::Approx(linear_to_db(oracle::kLognormalMeanSquare)).epsilon(0.02));
    }

    TEST_CASE("phase advances by a constant step within a life segment")
    {
        const auto p = preset_5gr();
        GenerationRecord rec;
        const auto t = generate(p, {.n_snapshots = 20'000, .rng_seed = 4}, &rec);
        const double dt = p.snapshot_interval_s;
        const double bound = 2.0 * std::numbers::pi * p.max_doppler_hz * dt;
        bool ok = true;
        for (std::size_t l = 0; l < 5; ++l)
            for (std::size_t r = 1; r < t.n_snapshots(); ++r)
            {
                if (!rec.states(r, l) || !rec.states(r - 1, l))
                    continue;
                const double step = std::remainder(std::arg(t.gains(r, l)) - std::arg(t.gains(r - 1, l)),
                                                   2.0 * std::numbers::pi);
                const double expected = 2.0 * std::numbers::pi * rec.doppler_hz(r, l) * dt;
                ok &= std::abs(step - expected) <= 1e-9;
                ok &= std::abs(step) <= bound + 1e-12;
                ok &= rec.doppler_hz(r, l) == rec.doppler_hz(r - 1, l);
            }
        CHECK(ok);
    }

    TEST_CASE("Doppler draws respect the bound in both modes")
    {
        for (auto mode : {DopplerMode::RedrawnPerBirth, DopplerMode::PerTapConstant})
        {
            GenerationRecord rec;
            generate(preset_5gr(), {.n_snapshots = 50'000, .rng_seed = 6, .doppler_mode = mode}, &rec);
            CHECK_FALSE(rec.doppler_draws.empty());
            const auto [lo, hi] = std::minmax_element(rec.doppler_draws.begin(), rec.doppler_draws.end());
            CHECK(*lo >= -160.0);
            CHECK(*hi <= 160.0);
            if (mode == DopplerMode::PerTapConstant)
                CHECK(rec.doppler_draws.size() == 5);
        }
    }

    TEST_CASE("phases stay inside the configured interval at birth")
    {
        auto p = all_alive(preset_5gr());
        GenerationRecord rec;
        const auto t = generate(p, {.n_snapshots = 1, .rng_seed = 9}, &rec);
        for (std::size_t l = 0; l < 5; ++l)
        {
            const double phi = std::arg(t.gains(0, l));
            CHECK(phi >= 0.0);
            CHECK(phi <= std::numbers::pi);
        }
    }

    TEST_CASE("generation is deterministic in the seed")
    {
        const GenConfig a{.n_snapshots = 3000, .rng_seed = 42};
        GenConfig b = a;
        b.rng_seed = 43;
        CHECK(generate(preset_5gr(), a) == generate(preset_5gr(), a));
        CHECK_FALSE(generate(preset_5gr(), a).gains == generate(preset_5gr(), b).gains);
    }

    TEST_CASE("generate rejects bad input")
    {
        CHECK_THROWS_AS(generate(preset_5gr(), {.n_snapshots = 0}), DomainError);
        auto p = preset_5gr();
        p.taps[1].chain.p11 = -0.1;
        CHECK_THROWS_AS(generate(p, {.n_snapshots = 10}), ValidationError);
    }

    TEST_CASE("apply_to_signal: identity channel")
    {
        auto t = testing::constant_trace({{1.0, 0.0}}, 3);
        const std::vector<cdouble> in{{1, 2}, {3, -1}, {0.5, 0}, {-2, 4}};
        CHECK(apply_to_signal(t, in, 10e6) == in);
    }

    TEST_CASE("apply_to_signal: delayed scaled impulse")
    {
        auto t = testing::constant_trace({{0.5, 0.0}}, 1);
        t.delays_s = {200e-9};
        std::vector<cdouble> in(6);
        in[0] = 1.0;
        const auto out = apply_to_signal(t, in, 10e6);
        for (std::size_t k = 0; k < out.size(); ++k)
            CHECK(out[k] == (k == 2 ? cdouble{0.5, 0.0} : cdouble{}));
    }

    TEST_CASE("apply_to_signal: preset response support is bounded by the taps")
    {
        const auto t = generate(preset_5gr(), {.n_snapshots = 4, .rng_seed = 3});
        std::vector<cdouble> in(400);
        for (std::size_t k = 0; k < in.size(); k += 8)
            in[k] = 1.0;
        const auto out = apply_to_signal(t, in, 10e6);
        for (std::size_t k = 0; k < out.size(); ++k)
            if (k % 8 >= 5)
                CHECK(out[k] == cdouble{});
    }

    TEST_CASE("apply_to_signal: fractional delay names the tap")
    {
        auto t = testing::constant_trace({{1.0, 0.0}, {1.0, 0.0}}, 2);
        t.delays_s = {0.0, 150e-9};
        t.meta.delay_resolution_s = 50e-9;
        std::vector<cdouble> in(4, 1.0);
        try
        {
            apply_to_signal(t, in, 10e6);
            FAIL("expected a domain error");
        }
        catch (const DomainError &e)
        {
            CHECK(std::string(e.what()).find("resolution") != std::string::npos);
        }
        t.meta.delay_resolution_s = 100e-9;
        try
        {
            apply_to_signal(t, in, 10e6);
            FAIL("expected a domain error");
        }
        catch (const DomainError &e)
        {
            CHECK(std::string(e.what()).find("tap 1") != std::string::npos);
        }
        CHECK_THROWS_AS(apply_to_signal(t, std::vector<cdouble>{}, 10e6), DomainError);
    }

    TEST_CASE("add_noise marks the trace noisy")
    {
        const auto t = generate(preset_5gr(), {.n_snapshots = 100, .rng_seed = 3});
        const auto n = add_noise(t, 1e-6, 1);
        CHECK(t.meta.noiseless);
        CHECK_FALSE(n.meta.noiseless);
        CHECK_FALSE(n.gains == t.gains);
    }
}
