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

#include "json_fields.hpp"

#include <mtdl/serialize.hpp>
#include <mtdl/trace_io.hpp>

#include <cmath>
#include <cstdio>
#include <limits>

namespace mtdl
{
    namespace detail
    {
        json parse_json_text(std::string_view text)
        {
            try
            {
                return json::parse(text.begin(), text.end());
            }
            catch (const json::parse_error &e)
            {
                // e.byte is 1-based and points just past the offending character.
                std::size_t line = 1, col = 1;
                const std::size_t stop = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
                for (std::size_t i = 0; i < stop; ++i)
                {
                    if (text[i] == '\n')
                    {
                        ++line;
                        col = 1;
                    }
                    else
                        ++col;
                }
                std::string what = e.what();
                if (const auto pos = what.find("syntax error"); pos != std::string::npos)
                    what = what.substr(pos);
                throw ParseError(what, "line " + std::to_string(line) + ", column " + std::to_string(col));
            }
        }
    } // namespace detail

    using detail::Fields;
    using detail::json;

    namespace
    {
        json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

        double number_or_nan(const json &j)
        {
            return j.is_number() ? j.get<double>() : std::numeric_limits<double>::quiet_NaN();
        }

        json params_to_json(const TapParameterSet &p)
        {
            json j;
            j["schema_version"] = kSchemaVersion;
            j["taps"] = json::array();
            for (const auto &tap : p.taps)
                j["taps"].push_back({{"delay_s", tap.delay_s},
                                     {"mean_power_db", tap.mean_power_db},
                                     {"p00", tap.chain.p00},
                                     {"p11", tap.chain.p11},
                                     {"p1", tap.chain.p1_init}});
            j["amplitude_dist"] = {{"mu", p.amplitude_dist.mu}, {"sigma", p.amplitude_dist.sigma}};
            j["phase_dist"] = {{"lo", p.phase_dist.lo}, {"hi", p.phase_dist.hi}};
            j["max_doppler_hz"] = p.max_doppler_hz;
            j["correlation"] = p.correlation;
            j["snapshot_interval_s"] = p.snapshot_interval_s;
            j["delay_resolution_s"] = p.delay_resolution_s;
            return j;
        }

        // Reads the parameter keys from `f`; the caller decides about extras.
        TapParameterSet params_from_fields(Fields &f)
        {
            TapParameterSet p;
            const auto &taps = f.array("taps");
            for (std::size_t i = 0; i < taps.size(); ++i)
            {
                Fields t(taps[i], f.child("taps") + "[" + std::to_string(i) + "]");
                TapEntry tap;
                tap.delay_s = t.number("delay_s");
                tap.mean_power_db = t.number("mean_power_db");
                tap.chain.p00 = t.number("p00");
                tap.chain.p11 = t.number("p11");
                tap.chain.p1_init = t.number("p1");
                t.finish();
                p.taps.push_back(tap);
            }

            Fields amp(f.object("amplitude_dist"), f.child("amplitude_dist"));
            p.amplitude_dist.mu = amp.number("mu");
            p.amplitude_dist.sigma = amp.number("sigma");
            amp.finish();

            Fields ph(f.object("phase_dist"), f.child("phase_dist"));
            p.phase_dist.lo = ph.number("lo");
            p.phase_dist.hi = ph.number("hi");
            ph.finish();

            p.max_doppler_hz = f.number("max_doppler_hz");

            const auto &corr = f.array("correlation");
            for (std::size_t i = 0; i < corr.size(); ++i)
            {
                const std::string rp = f.child("correlation") + "[" + std::to_string(i) + "]";
                if (!corr[i].is_array())
                    throw ParseError("expected an array", rp);
                std::vector<double> row;
                for (std::size_t k = 0; k < corr[i].size(); ++k)
                {
                    if (!corr[i][k].is_number())
                        throw ParseError("expected a number", rp + "[" + std::to_string(k) + "]");
                    row.push_back(corr[i][k].get<double>());
                }
                p.correlation.push_back(std::move(row));
            }

            p.snapshot_interval_s = f.number("snapshot_interval_s");
            p.delay_resolution_s = f.number("delay_resolution_s");
            return p;
        }

        void check_schema(Fields &f)
        {
            const auto v = f.unsigned_int("schema_version");
            if (v != static_cast<std::uint64_t>(kSchemaVersion))
                throw ParseError("unsupported schema version " + std::to_string(v), f.child("schema_version"));
        }

        json counts_to_json(const TransitionCounts &c)
        {
            return {{"n00", c.n00}, {"n01", c.n01}, {"n10", c.n10}, {"n11", c.n11}};
        }
    } // namespace

    namespace detail
    {
        // Shared with the config reader, which embeds a parameter block.
        TapParameterSet params_from_json(const json &j, const std::string &path, bool require_schema)
        {
            Fields f(j, path);
            if (require_schema || f.has("schema_version"))
                check_schema(f);
            auto p = params_from_fields(f);
            f.finish();
            return p;
        }

        json params_json(const TapParameterSet &p) { return params_to_json(p); }
    } // namespace detail

    std::string params_to_text(const TapParameterSet &params) { return params_to_json(params).dump(2) + "\n"; }

    TapParameterSet params_from_text(std::string_view text)
    {
        return detail::params_from_json(detail::parse_json_text(text), "", true);
    }

    void save_params(const std::string &path, const TapParameterSet &params)
    {
        write_file_atomic(path, params_to_text(params));
    }

    TapParameterSet load_params(const std::string &path) { return params_from_text(read_file(path)); }

    std::string model_to_text(const EstimatedModel &model)
    {
        json j = params_to_json(model.params);
        const auto &d = model.diagnostics;
        json dj;
        dj["noise_floor_db"] = number_or_null(d.noise_floor_db);
        dj["max_rms_ds_s"] = d.max_rms_ds_s;
        dj["tap_count_rms_rule"] = d.tap_count_rms_rule;
        dj["tap_count_occupancy"] = d.tap_count_occupancy;
        dj["dropped_bins"] = d.dropped_bins;
        dj["n_amplitude_samples"] = d.n_amplitude_samples;
        dj["pooled_fit"] = {{"mu", d.pooled_fit.mu}, {"sigma", d.pooled_fit.sigma}};
        dj["lognormal_ks"] = number_or_null(d.lognormal_ks);
        dj["linear_correlation"] = d.linear_correlation;
        json pairs = json::array();
        for (std::size_t i = 0; i < d.correlation_pair_counts.rows(); ++i)
        {
            const auto row = d.correlation_pair_counts.row(i);
            pairs.push_back(std::vector<std::size_t>(row.begin(), row.end()));
        }
        dj["correlation_pair_counts"] = pairs;
        dj["taps"] = json::array();
        for (const auto &t : d.taps)
            dj["taps"].push_back({{"bin", t.bin},
                                  {"counts", counts_to_json(t.counts)},
                                  {"row0_undefined", t.row0_undefined},
                                  {"row1_undefined", t.row1_undefined},
                                  {"occupancy", t.occupancy},
                                  {"censoring_rate", t.censoring_rate},
                                  {"ln_fit", {{"mu", t.ln_fit.mu}, {"sigma", t.ln_fit.sigma}}},
                                  {"power_clamped", t.power_clamped}});
        j["diagnostics"] = dj;
        return j.dump(2) + "\n";
    }

    EstimatedModel model_from_text(std::string_view text)
    {
        const json j = detail::parse_json_text(text);
        Fields f(j, "");
        check_schema(f);
        EstimatedModel m;
        m.params = params_from_fields(f);

        const json &dj = f.object("diagnostics");
        f.finish();

        auto &d = m.diagnostics;
        try
        {
            d.noise_floor_db = dj.at("noise_floor_db").is_null() ? -HUGE_VAL : dj.at("noise_floor_db").get<double>();
            d.max_rms_ds_s = dj.at("max_rms_ds_s").get<double>();
            d.tap_count_rms_rule = dj.at("tap_count_rms_rule").get<int>();
            d.tap_count_occupancy = dj.at("tap_count_occupancy").get<std::size_t>();
            d.dropped_bins = dj.at("dropped_bins").get<std::vector<std::size_t>>();
            d.n_amplitude_samples = dj.at("n_amplitude_samples").get<std::size_t>();
            d.pooled_fit = {dj.at("pooled_fit").at("mu").get<double>(), dj.at("pooled_fit").at("sigma").get<double>()};
            d.lognormal_ks = number_or_nan(dj.at("lognormal_ks"));
            d.linear_correlation = dj.at("linear_correlation").get<Matrix>();
            const auto pairs = dj.at("correlation_pair_counts").get<std::vector<std::vector<std::size_t>>>();
            d.correlation_pair_counts = Table<std::size_t>(pairs.size(), pairs.size());
            for (std::size_t i = 0; i < pairs.size(); ++i)
                for (std::size_t k = 0; k < pairs[i].size() && k < pairs.size(); ++k)
                    d.correlation_pair_counts(i, k) = pairs[i][k];
            for (const auto &tj : dj.at("taps"))
            {
                TapDiagnostics t;
                t.bin = tj.at("bin").get<std::size_t>();
                const auto &c = tj.at("counts");
                t.counts = {c.at("n00").get<std::uint64_t>(), c.at("n01").get<std::uint64_t>(),
                            c.at("n10").get<std::uint64_t>(), c.at("n11").get<std::uint64_t>()};
                t.row0_undefined = tj.at("row0_undefined").get<bool>();
                t.row1_undefined = tj.at("row1_undefined").get<bool>();
                t.occupancy = tj.at("occupancy").get<double>();
                t.censoring_rate = tj.at("censoring_rate").get<double>();
                t.ln_fit = {tj.at("ln_fit").at("mu").get<double>(), tj.at("ln_fit").at("sigma").get<double>()};
                t.power_clamped = tj.at("power_clamped").get<bool>();
                d.taps.push_back(t);
            }
        }
        catch (const json::exception &e)
        {
            throw ParseError(e.what(), "diagnostics");
        }
        return m;
    }

    std::string pdf_to_text(const EmpiricalPdf &pdf)
    {
        std::string out = "# bin_edge_lo,bin_edge_hi,density\n";
        char buf[96];
        for (std::size_t i = 0; i < pdf.densities.size(); ++i)
        {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", pdf.bin_edges[i], pdf.bin_edges[i + 1],
                          pdf.densities[i]);
            out += buf;
        }
        return out;
    }

} // namespace mtdl
