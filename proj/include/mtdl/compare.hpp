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

#include <mtdl/stats.hpp>
#include <mtdl/trace.hpp>

#include <string>
#include <vector>

namespace mtdl
{
    struct NamedTrace
    {
        std::string name;
        CirTrace trace;
    };

    struct CompareOptions
    {
        std::size_t bins = 50;
        std::size_t window = 10;
        double threshold_db = kDefaultThresholdDb;
    };

    struct TraceSummary
    {
        std::string name;
        std::vector<double> rms_ds_s;   // defined windows only
        double mean_rms_ds_s = 0.0;
        double var_rms_ds_s2 = 0.0;
        std::vector<double> occupancy;  // per tap, threshold-based
        EmpiricalPdf normalized_pdf;    // RMS DS / its sample mean
    };

    struct PairDistance
    {
        std::size_t a = 0, b = 0;
        DistributionDistance distance;
    };

    struct CompareReport
    {
        std::vector<TraceSummary> traces;
        std::vector<PairDistance> pairs; // every unordered pair, a < b
        CompareOptions options;

        const PairDistance &pair(std::size_t a, std::size_t b) const;
    };

    // Needs >= 2 traces on identical delay grids (DomainError otherwise).
    CompareReport compare_traces(const std::vector<NamedTrace> &traces, const CompareOptions &opts = {});

    std::string report_to_text(const CompareReport &report);

} // namespace mtdl
