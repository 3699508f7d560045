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

#include <mtdl/markov.hpp>
#include <mtdl/params.hpp>
#include <mtdl/stats.hpp>
#include <mtdl/trace.hpp>

namespace mtdl
{
    struct StateAssignment
    {
        Table<std::uint8_t> states; // 1 = tap present in that snapshot
        double noise_floor_db = 0.0;
    };

    // A cell is alive when its power exceeds the noise floor (estimated over
    // the whole trace) by threshold_db.
    StateAssignment assign_states(const CirTrace &trace, double threshold_db = kDefaultThresholdDb);

    struct EstimatorOptions
    {
        double speed_mps = kmh_to_mps(80.0);
        // Window (in snapshots) for the RMS delay spread that feeds the tap
        // count rule; 1 = per snapshot.
        std::size_t rms_window = 1;
        // A delay bin counts as a resolvable tap when it is alive in at least
        // this fraction of snapshots.
        double min_occupancy = 0.10;
    };

    struct TapDiagnostics
    {
        std::size_t bin = 0; // column in the source trace
        TransitionCounts counts;
        bool row0_undefined = false;
        bool row1_undefined = false;
        double occupancy = 0.0;
        double censoring_rate = 0.0; // fraction of snapshots below threshold
        LognormalParams ln_fit;      // per-tap fit of alive amplitudes
        bool power_clamped = false;  // stronger than tap 1, clamped to 0 dB
    };

    struct EstimationDiagnostics
    {
        std::vector<TapDiagnostics> taps;
        std::vector<std::size_t> dropped_bins; // never-alive bins inside the kept range
        double noise_floor_db = 0.0;
        double max_rms_ds_s = 0.0;
        int tap_count_rms_rule = 1;        // ceil(max RMS DS / resolution) + 1
        std::size_t tap_count_occupancy = 0; // last sufficiently occupied bin + 1
        std::size_t n_amplitude_samples = 0;
        LognormalParams pooled_fit;         // plain ML fit over all alive amplitudes
        double lognormal_ks = 0.0;          // pooled ln-amplitudes vs fitted normal
        Matrix linear_correlation;          // Pearson on linear amplitudes
        Table<std::size_t> correlation_pair_counts;
    };

    struct EstimatedModel
    {
        TapParameterSet params;
        EstimationDiagnostics diagnostics;
    };

    // Recovers the Markov TDL parameters from a trace: tap count, amplitude
    // law, tap powers, Doppler bound, per-tap chains and tap correlation.
    // Throws DomainError for traces with fewer than 2 snapshots or
    // resolution_s <= 0.
    EstimatedModel estimate_model(const CirTrace &trace, double threshold_db, double resolution_s,
                                  const EstimatorOptions &opts = {});

} // namespace mtdl
