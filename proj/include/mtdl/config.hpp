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

#include <mtdl/baseline.hpp>
#include <mtdl/generator.hpp>
#include <mtdl/params.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace mtdl
{
    enum class ChannelKind
    {
        Markov,
        Stationary
    };

    // Experiment description for `generate`. Text form is JSON:
    //
    //   {
    //     "schema_version": 1,
    //     "model": "markov" | "stationary",           (default markov)
    //     "preset": "5gr"  |  "params": { ... },       (exactly one)
    //     "n_snapshots": 1000,
    //     "seed": 42,
    //     "doppler_mode": "redrawn-per-birth" | "per-tap-constant",
    //     "amplitude_mode": "power-scaled-lognormal" | "common-lognormal",
    //     "carrier_hz": 2.16e9,
    //     "snapshot_interval_s": 1e-3,                 (overrides params)
    //     "baseline_doppler": "uniform" | "classic-spectrum",
    //     "baseline_sinusoids": 32
    //   }
    struct RunConfig
    {
        ChannelKind kind = ChannelKind::Markov;
        std::string preset;
        TapParameterSet params;
        GenConfig gen;
        BaselineDoppler baseline_doppler = BaselineDoppler::Uniform;
        std::size_t baseline_sinusoids = 32;
    };

    // Throws ParseError (syntax: "line L, column C"; schema: field path) or
    // ValidationError (n_snapshots == 0, invalid params).
    RunConfig parse_run_config(std::string_view text);

    // Canonical JSON echo of a parsed config (embedded in manifests).
    std::string run_config_to_text(const RunConfig &cfg);

    CirTrace run_generate(const RunConfig &cfg);

} // namespace mtdl
