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

#include <mtdl/estimator.hpp>
#include <mtdl/params.hpp>
#include <mtdl/stats.hpp>

#include <string>
#include <string_view>

namespace mtdl
{
    inline constexpr int kSchemaVersion = 1;

    // JSON text with keys schema_version, taps[], amplitude_dist, phase_dist,
    // max_doppler_hz, correlation, snapshot_interval_s, delay_resolution_s.
    // Doubles are written shortest-round-trip, so load(save(p)) == p.
    std::string params_to_text(const TapParameterSet &params);

    // Strict: unknown keys, missing keys and type mismatches throw ParseError
    // naming the field path. Does not run validate().
    TapParameterSet params_from_text(std::string_view text);

    void save_params(const std::string &path, const TapParameterSet &params);
    TapParameterSet load_params(const std::string &path);

    // Parameter schema plus a "diagnostics" section.
    std::string model_to_text(const EstimatedModel &model);
    EstimatedModel model_from_text(std::string_view text);

    // Plain delimited histogram for plotting: "bin_edge_lo,bin_edge_hi,density".
    std::string pdf_to_text(const EmpiricalPdf &pdf);

} // namespace mtdl
