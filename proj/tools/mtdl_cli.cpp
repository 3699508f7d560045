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

// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 2 input/parse error, 3 validation/semantic error.

#include <mtdl/mtdl.h>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace
{
    constexpr int kExitOk = 0;
    constexpr int kExitInput = 2;
    constexpr int kExitSemantic = 3;
    constexpr int kExitInternal = 1;

    struct Failure
    {
        int exit_code;
    };

    int exit_code_for(int status)
    {
        switch (status)
        {
        case MTDL_OK:
            return kExitOk;
        case MTDL_ERROR_PARSE:
        case MTDL_ERROR_IO:
        case MTDL_ERROR_NULL_POINTER:
            return kExitInput;
        case MTDL_ERROR_DOMAIN:
        case MTDL_ERROR_VALIDATION:
        case MTDL_ERROR_MISMATCH:
            return kExitSemantic;
        default:
            return kExitInternal;
        }
    }

    // Throws Failure after printing the library's message.
    void check(int status, const std::string &context)
    {
        if (status == MTDL_OK)
            return;
        std::cerr << "mtdl: " << context << ": " << mtdl_status_name(status) << "\n  " << mtdl_last_error()
                  << "\n";
        throw Failure{exit_code_for(status)};
    }

    template <typename H, int (*Destroy)(H)>
    struct Deleter
    {
        void operator()(H h) const { Destroy(h); }
    };

    using Params = std::unique_ptr<mtdl_params_struct, Deleter<mtdl_params_t, mtdl_params_destroy>>;
    using Config = std::unique_ptr<mtdl_config_struct, Deleter<mtdl_config_t, mtdl_config_destroy>>;
    using Trace = std::unique_ptr<mtdl_trace_struct, Deleter<mtdl_trace_t, mtdl_trace_destroy>>;
    using Model = std::unique_ptr<mtdl_model_struct, Deleter<mtdl_model_t, mtdl_model_destroy>>;
    using Report = std::unique_ptr<mtdl_report_struct, Deleter<mtdl_report_t, mtdl_report_destroy>>;
    using Manifest = std::unique_ptr<mtdl_manifest_struct, Deleter<mtdl_manifest_t, mtdl_manifest_destroy>>;

    template <typename Fn>
    std::string text_of(Fn &&fn, const std::string &context)
    {
        size_t len = 0;
        fn(nullptr, &len);
        std::string buf(len, '\0');
        check(fn(buf.data(), &len), context);
        buf.resize(len ? len - 1 : 0);
        return buf;
    }

    std::string manifest_path(const std::string &out)
    {
        return text_of([&](char *b, size_t *l) { return mtdl_manifest_path_for(out.c_str(), b, l); }, "manifest path");
    }

    std::string sha(const std::string &path)
    {
        char hex[65] = {};
        check(mtdl_file_sha256(path.c_str(), hex), "hashing " + path);
        return hex;
    }

    std::string fmt(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    // ---- generate ----------------------------------------------------------

    struct GenerateArgs
    {
        std::string config;
        std::string out;
        std::optional<std::uint64_t> seed;
        std::string format = "bin";
    };

    int run_generate(const GenerateArgs &a)
    {
        mtdl_config_t raw_cfg = nullptr;
        check(mtdl_config_load(&raw_cfg, a.config.c_str()), "config " + a.config);
        Config cfg(raw_cfg);
        if (a.seed)
            check(mtdl_config_set_seed(cfg.get(), *a.seed), "seed");

        mtdl_trace_t raw_trace = nullptr;
        check(mtdl_generate(cfg.get(), &raw_trace), "generate");
        Trace trace(raw_trace);

        const int format = a.format == "text" ? MTDL_FORMAT_TEXT : MTDL_FORMAT_BINARY;
        check(mtdl_trace_save(trace.get(), a.out.c_str(), format), "writing " + a.out);

        const auto echo =
            text_of([&](char *b, size_t *l) { return mtdl_config_to_json(cfg.get(), b, l); }, "config echo");
        std::uint64_t seed = 0;
        check(mtdl_config_seed(cfg.get(), &seed), "seed");

        mtdl_manifest_t raw_m = nullptr;
        check(mtdl_manifest_create(&raw_m, "generate", echo.c_str()), "manifest");
        Manifest m(raw_m);
        check(mtdl_manifest_add_seed(m.get(), seed), "manifest");
        check(mtdl_manifest_add_input(m.get(), a.config.c_str()), "manifest");
        check(mtdl_manifest_add_output(m.get(), a.out.c_str()), "manifest");
        const auto mpath = manifest_path(a.out);
        check(mtdl_manifest_save(m.get(), mpath.c_str()), "writing " + mpath);

        size_t n = 0, L = 0;
        mtdl_trace_dims(trace.get(), &n, &L);
        std::cout << "generated " << n << " x " << L << " trace -> " << a.out << "\n"
                  << "sha256 " << sha(a.out) << "\n"
                  << "manifest " << mpath << "\n";
        return kExitOk;
    }

    // ---- estimate ----------------------------------------------------------

    struct EstimateArgs
    {
        std::string trace;
        std::string out;
        double threshold_db = 6.0;
        double speed_kmh = 80.0;
    };

    int run_estimate(const EstimateArgs &a)
    {
        mtdl_trace_t raw_trace = nullptr;
        check(mtdl_trace_load(&raw_trace, a.trace.c_str()), "trace " + a.trace);
        Trace trace(raw_trace);

        const double speed_mps = a.speed_kmh / 3.6;
        mtdl_model_t raw_model = nullptr;
        check(mtdl_estimate(trace.get(), a.threshold_db, speed_mps, &raw_model), "estimate");
        Model model(raw_model);
        check(mtdl_model_save(model.get(), a.out.c_str()), "writing " + a.out);

        const std::string echo = "{\"speed_mps\":" + fmt(speed_mps) + ",\"threshold_db\":" + fmt(a.threshold_db) + "}";
        mtdl_manifest_t raw_m = nullptr;
        check(mtdl_manifest_create(&raw_m, "estimate", echo.c_str()), "manifest");
        Manifest m(raw_m);
        check(mtdl_manifest_add_input(m.get(), a.trace.c_str()), "manifest");
        check(mtdl_manifest_add_output(m.get(), a.out.c_str()), "manifest");
        const auto mpath = manifest_path(a.out);
        check(mtdl_manifest_save(m.get(), mpath.c_str()), "writing " + mpath);

        mtdl_params_t raw_params = nullptr;
        check(mtdl_model_params(model.get(), &raw_params), "model");
        Params params(raw_params);
        size_t L = 0;
        mtdl_params_num_taps(params.get(), &L);
        std::cout << "estimated " << L << " taps -> " << a.out << "\n";
        std::printf("%4s %10s %10s %8s %8s %8s\n", "tap", "delay_ns", "power_dB", "p00", "p11", "p1");
        for (size_t l = 0; l < L; ++l)
        {
            double d, p, p00, p11, p1;
            mtdl_params_tap(params.get(), l, &d, &p, &p00, &p11, &p1);
            std::printf("%4zu %10.1f %10.2f %8.4f %8.4f %8.4f\n", l + 1, d * 1e9, p, p00, p11, p1);
        }
        std::cout << "manifest " << mpath << "\n";
        return kExitOk;
    }

    // ---- compare -----------------------------------------------------------

    struct CompareArgs
    {
        std::vector<std::string> traces;
        std::string out;
        std::size_t bins = 50;
        std::size_t window = 10;
        double threshold_db = 6.0;
    };

    int run_compare(const CompareArgs &a)
    {
        std::vector<Trace> owned;
        std::vector<mtdl_trace_t> handles;
        std::vector<std::string> names;
        std::set<std::string> used;
        for (const auto &path : a.traces)
        {
            mtdl_trace_t raw = nullptr;
            check(mtdl_trace_load(&raw, path.c_str()), "trace " + path);
            owned.emplace_back(raw);
            handles.push_back(raw);

            std::string name = std::filesystem::path(path).stem().string();
            for (int k = 2; used.count(name); ++k)
                name = std::filesystem::path(path).stem().string() + "_" + std::to_string(k);
            used.insert(name);
            names.push_back(name);
        }
        std::vector<const char *> cnames;
        for (const auto &n : names)
            cnames.push_back(n.c_str());

        mtdl_report_t raw_report = nullptr;
        check(mtdl_compare(handles.data(), cnames.data(), handles.size(), a.bins, a.window, a.threshold_db,
                           &raw_report),
              "compare");
        Report report(raw_report);
        check(mtdl_report_save(report.get(), a.out.c_str()), "writing " + a.out);

        const std::string echo = "{\"bins\":" + std::to_string(a.bins) + ",\"threshold_db\":" + fmt(a.threshold_db) +
                                 ",\"window\":" + std::to_string(a.window) + "}";
        mtdl_manifest_t raw_m = nullptr;
        check(mtdl_manifest_create(&raw_m, "compare", echo.c_str()), "manifest");
        Manifest m(raw_m);
        for (const auto &p : a.traces)
            check(mtdl_manifest_add_input(m.get(), p.c_str()), "manifest");
        check(mtdl_manifest_add_output(m.get(), a.out.c_str()), "manifest");

        const std::filesystem::path out_path(a.out);
        std::printf("%-20s %8s %14s %14s   occupancy per tap\n", "trace", "windows", "mean_rms_ns", "std_rms_ns");
        for (size_t i = 0; i < names.size(); ++i)
        {
            const auto pdf = (out_path.parent_path() / (out_path.stem().string() + "." + names[i] + ".pdf.csv")).string();
            check(mtdl_report_write_pdf(report.get(), i, pdf.c_str()), "writing " + pdf);
            check(mtdl_manifest_add_output(m.get(), pdf.c_str()), "manifest");

            double mean = 0, var = 0;
            size_t nw = 0;
            mtdl_report_trace_stats(report.get(), i, &mean, &var, &nw);
            size_t L = 0;
            mtdl_trace_dims(handles[i], nullptr, &L);
            std::vector<double> occ(L);
            mtdl_report_occupancy(report.get(), i, occ.data(), occ.size());
            std::printf("%-20s %8zu %14.3f %14.3f  ", names[i].c_str(), nw, mean * 1e9, std::sqrt(var) * 1e9);
            for (double o : occ)
                std::printf(" %.3f", o);
            std::printf("\n");
        }
        std::printf("\n%-20s %-20s %8s\n", "a", "b", "ks_stat");
        for (size_t i = 0; i < names.size(); ++i)
            for (size_t j = i + 1; j < names.size(); ++j)
            {
                double ks = 0;
                mtdl_report_ks(report.get(), i, j, &ks);
                std::printf("%-20s %-20s %8.4f\n", names[i].c_str(), names[j].c_str(), ks);
            }

        const auto mpath = manifest_path(a.out);
        check(mtdl_manifest_save(m.get(), mpath.c_str()), "writing " + mpath);
        std::cout << "\nreport " << a.out << "\nmanifest " << mpath << "\n";
        return kExitOk;
    }

    int run_preset(const std::string &out)
    {
        mtdl_params_t raw = nullptr;
        check(mtdl_params_preset_5gr(&raw), "preset");
        Params p(raw);
        check(mtdl_params_save(p.get(), out.c_str()), "writing " + out);
        std::cout << "wrote 5gr parameter set -> " << out << "\n";
        return kExitOk;
    }

    int run_verify(const std::string &path)
    {
        const int status = mtdl_manifest_verify(path.c_str());
        if (status == MTDL_OK)
        {
            std::cout << mtdl_last_error() << "\n";
            return kExitOk;
        }
        std::cerr << "mtdl: verify " << path << ": " << mtdl_status_name(status) << "\n  " << mtdl_last_error()
                  << "\n";
        return exit_code_for(status);
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Non-stationary Markov tapped-delay-line channel toolkit"};
    app.set_version_flag("--version", std::string(mtdl_version()));

    std::string verify_path;
    app.add_option("--verify-manifest", verify_path, "Re-derive the digests of a run manifest");

    GenerateArgs gen;
    auto *generate = app.add_subcommand("generate", "Synthesize a channel trace from a run config");
    generate->add_option("--config", gen.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    generate->add_option("--out", gen.out, "Output trace file")->required();
    generate->add_option("--seed", gen.seed, "Override the config's RNG seed");
    generate->add_option("--format", gen.format, "Trace format")->check(CLI::IsMember({"bin", "text"}));

    EstimateArgs est;
    auto *estimate = app.add_subcommand("estimate", "Recover model parameters from a trace");
    estimate->add_option("--trace", est.trace, "Input trace file")->required();
    estimate->add_option("--out", est.out, "Output model file (JSON)")->required();
    estimate->add_option("--threshold-db", est.threshold_db, "Presence threshold above the noise floor [dB]");
    estimate->add_option("--speed-kmh", est.speed_kmh, "Receiver speed for the Doppler bound [km/h]");

    CompareArgs cmp;
    auto *compare = app.add_subcommand("compare", "Compare RMS delay spread statistics of traces");
    compare->add_option("traces", cmp.traces, "Trace files: model, baseline, [reference]")->required();
    compare->add_option("--out", cmp.out, "Output report (JSON)")->required();
    compare->add_option("--bins", cmp.bins, "Histogram bin count")->check(CLI::PositiveNumber);
    compare->add_option("--window", cmp.window, "Snapshots per RMS delay spread window")->check(CLI::PositiveNumber);
    compare->add_option("--threshold-db", cmp.threshold_db, "Presence threshold above the noise floor [dB]");

    std::string preset_out;
    auto *preset = app.add_subcommand("preset", "Write the built-in 5gr parameter set");
    preset->add_option("--out", preset_out, "Output parameter file (JSON)")->required();

    app.require_subcommand(0, 1);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try
    {
        if (!verify_path.empty())
            return run_verify(verify_path);
        if (*generate)
            return run_generate(gen);
        if (*estimate)
            return run_estimate(est);
        if (*compare)
            return run_compare(cmp);
        if (*preset)
            return run_preset(preset_out);
    }
    catch (const Failure &f)
    {
        return f.exit_code;
    }

    std::cerr << app.help();
    return kExitInput;
}
