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

#include <mtdl/compare.hpp>
#include <mtdl/estimator.hpp>
#include <mtdl/trace_io.hpp>

#include <cmath>

namespace mtdl
{
    using detail::json;

    const PairDistance &CompareReport::pair(std::size_t a, std::size_t b) const
    {
        if (a > b)
            std::swap(a, b);
        for (const auto &p : pairs)
            if (p.a == a && p.b == b)
                return p;
        throw DomainError("compare report: no such pair");
    }

    CompareReport compare_traces(const std::vector<NamedTrace> &traces, const CompareOptions &opts)
    {
        if (traces.size() < 2)
            throw DomainError("compare: at least two traces are required");
        if (opts.bins == 0 || opts.window == 0)
            throw DomainError("compare: bins and window must be >= 1");

        const auto &ref = traces.front().trace;
        for (const auto &nt : traces)
        {
            check_trace(nt.trace);
            bool same = nt.trace.delays_s.size() == ref.delays_s.size();
            for (std::size_t l = 0; same && l < ref.delays_s.size(); ++l)
                same = seconds_to_ps(nt.trace.delays_s[l]) == seconds_to_ps(ref.delays_s[l]);
            if (!same)
                throw DomainError("compare: mismatched delay grids ('" + traces.front().name + "' vs '" + nt.name +
                                  "')");
        }

        CompareReport report;
        report.options = opts;
        for (const auto &nt : traces)
        {
            TraceSummary s;
            s.name = nt.name;
            const std::size_t window = std::min(opts.window, nt.trace.n_snapshots());
            s.rms_ds_s = defined_values(rms_delay_spread_series(nt.trace, window, opts.threshold_db));
            if (s.rms_ds_s.empty())
                throw DomainError("compare: trace '" + nt.name + "' has no window with a defined RMS delay spread");
            s.mean_rms_ds_s = mean(s.rms_ds_s);
            s.var_rms_ds_s2 = variance(s.rms_ds_s);

            const auto sa = assign_states(nt.trace, opts.threshold_db);
            for (std::size_t l = 0; l < nt.trace.n_taps(); ++l)
            {
                std::size_t alive = 0;
                for (std::size_t t = 0; t < nt.trace.n_snapshots(); ++t)
                    alive += sa.states(t, l);
                s.occupancy.push_back(static_cast<double>(alive) / static_cast<double>(nt.trace.n_snapshots()));
            }

            std::vector<double> normalized = s.rms_ds_s;
            if (s.mean_rms_ds_s > 0.0)
                for (auto &v : normalized)
                    v /= s.mean_rms_ds_s;
            s.normalized_pdf = empirical_pdf(normalized, opts.bins);
            report.traces.push_back(std::move(s));
        }

        for (std::size_t a = 0; a < report.traces.size(); ++a)
            for (std::size_t b = a + 1; b < report.traces.size(); ++b)
                report.pairs.push_back({a, b, distribution_distance(report.traces[a].rms_ds_s, report.traces[b].rms_ds_s)});
        return report;
    }

    std::string report_to_text(const CompareReport &report)
    {
        json j;
        j["options"] = {{"bins", report.options.bins},
                        {"window", report.options.window},
                        {"threshold_db", report.options.threshold_db}};
        j["traces"] = json::array();
        for (const auto &s : report.traces)
            j["traces"].push_back({{"name", s.name},
                                   {"n_windows", s.rms_ds_s.size()},
                                   {"mean_rms_ds_s", s.mean_rms_ds_s},
                                   {"var_rms_ds_s2", s.var_rms_ds_s2},
                                   {"std_rms_ds_s", std::sqrt(s.var_rms_ds_s2)},
                                   {"occupancy", s.occupancy},
                                   {"normalized_pdf",
                                    {{"bin_edges", s.normalized_pdf.bin_edges},
                                     {"densities", s.normalized_pdf.densities}}}});
        j["pairs"] = json::array();
        for (const auto &p : report.pairs)
            j["pairs"].push_back({{"a", report.traces[p.a].name},
                                  {"b", report.traces[p.b].name},
                                  {"ks_stat", p.distance.ks_stat},
                                  {"mean_diff_s", p.distance.mean_diff},
                                  {"std_diff_s", p.distance.std_diff}});
        return j.dump(2) + "\n";
    }

} // namespace mtdl
