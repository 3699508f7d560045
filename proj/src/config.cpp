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

#include <mtdl/config.hpp>

namespace mtdl
{
    using detail::Fields;
    using detail::json;

    namespace
    {
        template <typename E>
        E pick(const std::string &value, std::initializer_list<std::pair<const char *, E>> options,
               const std::string &field)
        {
            std::string allowed;
            for (const auto &[name, e] : options)
            {
                if (value == name)
                    return e;
                allowed += allowed.empty() ? name : std::string(", ") + name;
            }
            throw ParseError("unknown value '" + value + "' (expected one of: " + allowed + ")", field);
        }

        const char *name_of(DopplerMode m)
        {
            return m == DopplerMode::PerTapConstant ? "per-tap-constant" : "redrawn-per-birth";
        }

        const char *name_of(AmplitudeMode m)
        {
            return m == AmplitudeMode::CommonLognormal ? "common-lognormal" : "power-scaled-lognormal";
        }

        const char *name_of(BaselineDoppler d)
        {
            return d == BaselineDoppler::Uniform ? "uniform" : "classic-spectrum";
        }
    } // namespace

    RunConfig parse_run_config(std::string_view text)
    {
        const json root = detail::parse_json_text(text);
        Fields f(root, "");

        const auto version = f.unsigned_int("schema_version");
        if (version != 1)
            throw ParseError("unsupported schema version " + std::to_string(version), "schema_version");

        RunConfig cfg;
        if (f.has("model"))
            cfg.kind = pick<ChannelKind>(f.string("model"),
                                         {{"markov", ChannelKind::Markov}, {"stationary", ChannelKind::Stationary}},
                                         "model");

        const bool has_preset = f.has("preset"), has_params = f.has("params");
        if (has_preset == has_params)
            throw ParseError("exactly one of 'preset' or 'params' is required", has_preset ? "params" : "preset");
        if (has_preset)
        {
            cfg.preset = f.string("preset");
            if (cfg.preset != "5gr")
                throw ParseError("unknown preset '" + cfg.preset + "' (available: 5gr)", "preset");
            cfg.params = preset_5gr();
        }
        else
        {
            cfg.params = detail::params_from_json(f.object("params"), "params", false);
        }

        cfg.gen.n_snapshots = f.unsigned_int("n_snapshots");
        cfg.gen.rng_seed = f.has("seed") ? f.unsigned_int("seed") : 0;
        if (f.has("doppler_mode"))
            cfg.gen.doppler_mode = pick<DopplerMode>(f.string("doppler_mode"),
                                                     {{"redrawn-per-birth", DopplerMode::RedrawnPerBirth},
                                                      {"per-tap-constant", DopplerMode::PerTapConstant}},
                                                     "doppler_mode");
        if (f.has("amplitude_mode"))
            cfg.gen.amplitude_mode = pick<AmplitudeMode>(f.string("amplitude_mode"),
                                                         {{"power-scaled-lognormal", AmplitudeMode::PowerScaledLognormal},
                                                          {"common-lognormal", AmplitudeMode::CommonLognormal}},
                                                         "amplitude_mode");
        cfg.gen.carrier_hz = f.number_or("carrier_hz", cfg.gen.carrier_hz);
        if (f.has("snapshot_interval_s"))
            cfg.params.snapshot_interval_s = f.number("snapshot_interval_s");
        if (f.has("speed_kmh"))
        {
            const double kmh = f.number("speed_kmh");
            if (!(kmh >= 0.0) || !(cfg.gen.carrier_hz > 0.0))
                throw ValidationError({"speed_kmh: must be >= 0 with a positive carrier_hz"});
            cfg.params.max_doppler_hz = max_doppler(kmh_to_mps(kmh), cfg.gen.carrier_hz);
        }
        if (f.has("baseline_doppler"))
            cfg.baseline_doppler = pick<BaselineDoppler>(f.string("baseline_doppler"),
                                                         {{"uniform", BaselineDoppler::Uniform},
                                                          {"classic-spectrum", BaselineDoppler::ClassicSpectrum}},
                                                         "baseline_doppler");
        if (f.has("baseline_sinusoids"))
            cfg.baseline_sinusoids = f.unsigned_int("baseline_sinusoids");
        f.finish();

        auto violations = validate(cfg.params).violations;
        for (auto &v : violations)
            v = "params." + v;
        if (cfg.gen.n_snapshots == 0)
            violations.insert(violations.begin(), "n_snapshots: must be >= 1");
        if (!(cfg.gen.carrier_hz > 0.0))
            violations.push_back("carrier_hz: must be positive");
        if (cfg.baseline_sinusoids == 0)
            violations.push_back("baseline_sinusoids: must be >= 1");
        if (!violations.empty())
            throw ValidationError(std::move(violations));
        return cfg;
    }

    std::string run_config_to_text(const RunConfig &cfg)
    {
        json j;
        j["schema_version"] = 1;
        j["model"] = cfg.kind == ChannelKind::Markov ? "markov" : "stationary";
        j["params"] = detail::params_json(cfg.params);
        j["n_snapshots"] = cfg.gen.n_snapshots;
        j["seed"] = cfg.gen.rng_seed;
        j["doppler_mode"] = name_of(cfg.gen.doppler_mode);
        j["amplitude_mode"] = name_of(cfg.gen.amplitude_mode);
        j["carrier_hz"] = cfg.gen.carrier_hz;
        j["baseline_doppler"] = name_of(cfg.baseline_doppler);
        j["baseline_sinusoids"] = cfg.baseline_sinusoids;
        return j.dump();
    }

    CirTrace run_generate(const RunConfig &cfg)
    {
        if (cfg.kind == ChannelKind::Markov)
            return generate(cfg.params, cfg.gen);

        auto profile = profile_from_params(cfg.params);
        profile.doppler_model = cfg.baseline_doppler;
        profile.n_sinusoids = cfg.baseline_sinusoids;
        StationaryConfig sc;
        sc.snapshot_interval_s = cfg.params.snapshot_interval_s;
        sc.carrier_hz = cfg.gen.carrier_hz;
        sc.delay_resolution_s = cfg.params.delay_resolution_s;
        return generate_stationary(profile, cfg.params.max_doppler_hz, cfg.gen.n_snapshots, cfg.gen.rng_seed, sc);
    }

} // namespace mtdl
