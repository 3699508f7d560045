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

#include <mtdl/mtdl.h>

#include <mtdl/compare.hpp>
#include <mtdl/config.hpp>
#include <mtdl/errors.hpp>
#include <mtdl/estimator.hpp>
#include <mtdl/generator.hpp>
#include <mtdl/manifest.hpp>
#include <mtdl/serialize.hpp>
#include <mtdl/trace_io.hpp>

#include <cstring>
#include <new>
#include <string>
#include <utility>

struct mtdl_params_struct
{
    mtdl::TapParameterSet value;
};

struct mtdl_config_struct
{
    mtdl::RunConfig value;
};

struct mtdl_trace_struct
{
    mtdl::CirTrace value;
};

struct mtdl_model_struct
{
    mtdl::EstimatedModel value;
};

struct mtdl_report_struct
{
    mtdl::CompareReport value;
};

struct mtdl_manifest_struct
{
    mtdl::RunManifest value;
};

namespace
{
    thread_local std::string g_last_error;

    int fail(int status, const std::string &msg)
    {
        g_last_error = msg;
        return status;
    }

    // Runs fn, translating exceptions into status codes.
    template <typename F>
    int guard(F &&fn)
    {
        try
        {
            return fn();
        }
        catch (const mtdl::ParseError &e)
        {
            return fail(MTDL_ERROR_PARSE, e.what());
        }
        catch (const mtdl::ValidationError &e)
        {
            return fail(MTDL_ERROR_VALIDATION, e.what());
        }
        catch (const mtdl::DomainError &e)
        {
            return fail(MTDL_ERROR_DOMAIN, e.what());
        }
        catch (const mtdl::IoError &e)
        {
            return fail(MTDL_ERROR_IO, e.what());
        }
        catch (const std::bad_alloc &)
        {
            return fail(MTDL_ERROR_INTERNAL, "out of memory");
        }
        catch (const std::exception &e)
        {
            return fail(MTDL_ERROR_INTERNAL, e.what());
        }
        catch (...)
        {
            return fail(MTDL_ERROR_INTERNAL, "unknown error");
        }
    }

    int null_arg(const char *name) { return fail(MTDL_ERROR_NULL_POINTER, std::string(name) + " is NULL"); }

    int copy_text(const std::string &text, char *buf, size_t *len)
    {
        if (!len)
            return null_arg("len");
        const size_t need = text.size() + 1;
        if (!buf || *len < need)
        {
            *len = need;
            return fail(MTDL_ERROR_BUFFER_TOO_SMALL, "buffer too small, need " + std::to_string(need) + " bytes");
        }
        std::memcpy(buf, text.c_str(), need);
        *len = need;
        return MTDL_OK;
    }

    template <typename Handle, typename T>
    int emit(Handle *out, T &&value)
    {
        using S = std::remove_pointer_t<Handle>;
        *out = new S{std::forward<T>(value)};
        return MTDL_OK;
    }

    template <typename Handle>
    int destroy(Handle h)
    {
        delete h;
        return MTDL_OK;
    }
} // namespace

extern "C" {

const char *mtdl_version(void) { return mtdl::kVersionTag; }

const char *mtdl_last_error(void) { return g_last_error.c_str(); }

const char *mtdl_status_name(int status)
{
    switch (status)
    {
    case MTDL_OK: return "ok";
    case MTDL_ERROR_NULL_POINTER: return "null pointer";
    case MTDL_ERROR_DOMAIN: return "domain error";
    case MTDL_ERROR_PARSE: return "parse error";
    case MTDL_ERROR_VALIDATION: return "validation error";
    case MTDL_ERROR_IO: return "i/o error";
    case MTDL_ERROR_BUFFER_TOO_SMALL: return "buffer too small";
    case MTDL_ERROR_MISMATCH: return "mismatch";
    case MTDL_ERROR_INTERNAL: return "internal error";
    default: return "unknown status";
    }
}

// ---- params ---------------------------------------------------------------

int mtdl_params_preset_5gr(mtdl_params_t *out)
{
    if (!out)
        return null_arg("out");
    return guard([&] { return emit(out, mtdl::preset_5gr()); });
}

int mtdl_params_load(mtdl_params_t *out, const char *path)
{
    if (!out || !path)
        return null_arg(!out ? "out" : "path");
    return guard([&] { return emit(out, mtdl::load_params(path)); });
}

int mtdl_params_save(mtdl_params_t params, const char *path)
{
    if (!params || !path)
        return null_arg(!params ? "params" : "path");
    return guard([&]
                 {
                     mtdl::save_params(path, params->value);
                     return MTDL_OK; });
}

int mtdl_params_validate(mtdl_params_t params)
{
    if (!params)
        return null_arg("params");
    return guard([&]
                 {
                     mtdl::require_valid(params->value);
                     return MTDL_OK; });
}

int mtdl_params_num_taps(mtdl_params_t params, size_t *out)
{
    if (!params || !out)
        return null_arg(!params ? "params" : "out");
    *out = params->value.n_taps();
    return MTDL_OK;
}

int mtdl_params_tap(mtdl_params_t params, size_t l, double *delay_s, double *power_db, double *p00, double *p11,
                    double *p1)
{
    if (!params)
        return null_arg("params");
    if (l >= params->value.n_taps())
        return fail(MTDL_ERROR_DOMAIN, "tap index out of range");
    const auto &tap = params->value.taps[l];
    if (delay_s)
        *delay_s = tap.delay_s;
    if (power_db)
        *power_db = tap.mean_power_db;
    if (p00)
        *p00 = tap.chain.p00;
    if (p11)
        *p11 = tap.chain.p11;
    if (p1)
        *p1 = tap.chain.p1_init;
    return MTDL_OK;
}

int mtdl_params_destroy(mtdl_params_t params) { return destroy(params); }

int mtdl_tap_count(double max_rms_ds_s, double resolution_s, int *out)
{
    if (!out)
        return null_arg("out");
    return guard([&]
                 {
                     *out = mtdl::tap_count(max_rms_ds_s, resolution_s);
                     return MTDL_OK; });
}

int mtdl_max_doppler(double speed_mps, double carrier_hz, double *out)
{
    if (!out)
        return null_arg("out");
    return guard([&]
                 {
                     *out = mtdl::max_doppler(speed_mps, carrier_hz);
                     return MTDL_OK; });
}

// ---- config ---------------------------------------------------------------

int mtdl_config_load(mtdl_config_t *out, const char *path)
{
    if (!out || !path)
        return null_arg(!out ? "out" : "path");
    return guard([&] { return emit(out, mtdl::parse_run_config(mtdl::read_file(path))); });
}

int mtdl_config_parse(mtdl_config_t *out, const char *text, size_t len)
{
    if (!out || !text)
        return null_arg(!out ? "out" : "text");
    return guard([&] { return emit(out, mtdl::parse_run_config(std::string_view(text, len))); });
}

int mtdl_config_set_seed(mtdl_config_t cfg, uint64_t seed)
{
    if (!cfg)
        return null_arg("cfg");
    cfg->value.gen.rng_seed = seed;
    return MTDL_OK;
}

int mtdl_config_seed(mtdl_config_t cfg, uint64_t *out)
{
    if (!cfg || !out)
        return null_arg(!cfg ? "cfg" : "out");
    *out = cfg->value.gen.rng_seed;
    return MTDL_OK;
}

int mtdl_config_to_json(mtdl_config_t cfg, char *buf, size_t *len)
{
    if (!cfg)
        return null_arg("cfg");
    return guard([&] { return copy_text(mtdl::run_config_to_text(cfg->value), buf, len); });
}

int mtdl_config_destroy(mtdl_config_t cfg) { return destroy(cfg); }

// ---- traces ---------------------------------------------------------------

int mtdl_generate(mtdl_config_t cfg, mtdl_trace_t *out)
{
    if (!cfg || !out)
        return null_arg(!cfg ? "cfg" : "out");
    return guard([&] { return emit(out, mtdl::run_generate(cfg->value)); });
}

int mtdl_generate_params(mtdl_params_t params, size_t n_snapshots, uint64_t seed, mtdl_trace_t *out)
{
    if (!params || !out)
        return null_arg(!params ? "params" : "out");
    return guard([&]
                 {
                     mtdl::GenConfig gc;
                     gc.n_snapshots = n_snapshots;
                     gc.rng_seed = seed;
                     return emit(out, mtdl::generate(params->value, gc)); });
}

int mtdl_trace_load(mtdl_trace_t *out, const char *path)
{
    if (!out || !path)
        return null_arg(!out ? "out" : "path");
    return guard([&] { return emit(out, mtdl::read_trace(path)); });
}

int mtdl_trace_save(mtdl_trace_t trace, const char *path, int format)
{
    if (!trace || !path)
        return null_arg(!trace ? "trace" : "path");
    if (format != MTDL_FORMAT_BINARY && format != MTDL_FORMAT_TEXT)
        return fail(MTDL_ERROR_DOMAIN, "unknown trace format");
    return guard([&]
                 {
                     mtdl::write_trace(path, trace->value,
                                       format == MTDL_FORMAT_TEXT ? mtdl::TraceFormat::Text : mtdl::TraceFormat::Binary);
                     return MTDL_OK; });
}

int mtdl_trace_dims(mtdl_trace_t trace, size_t *n_snapshots, size_t *n_taps)
{
    if (!trace)
        return null_arg("trace");
    if (n_snapshots)
        *n_snapshots = trace->value.n_snapshots();
    if (n_taps)
        *n_taps = trace->value.n_taps();
    return MTDL_OK;
}

int mtdl_trace_delays(mtdl_trace_t trace, double *out, size_t capacity)
{
    if (!trace || !out)
        return null_arg(!trace ? "trace" : "out");
    const auto &d = trace->value.delays_s;
    if (capacity < d.size())
        return fail(MTDL_ERROR_BUFFER_TOO_SMALL, "need " + std::to_string(d.size()) + " doubles");
    std::copy(d.begin(), d.end(), out);
    return MTDL_OK;
}

int mtdl_trace_gains(mtdl_trace_t trace, double *out, size_t capacity)
{
    if (!trace || !out)
        return null_arg(!trace ? "trace" : "out");
    const auto &g = trace->value.gains.data();
    if (capacity < 2 * g.size())
        return fail(MTDL_ERROR_BUFFER_TOO_SMALL, "need " + std::to_string(2 * g.size()) + " doubles");
    for (size_t i = 0; i < g.size(); ++i)
    {
        out[2 * i] = g[i].real();
        out[2 * i + 1] = g[i].imag();
    }
    return MTDL_OK;
}

int mtdl_trace_apply(mtdl_trace_t trace, const double *input, size_t n_samples, double sample_rate_hz, double *output)
{
    if (!trace || !input || !output)
        return null_arg(!trace ? "trace" : (!input ? "input" : "output"));
    return guard([&]
                 {
                     std::vector<mtdl::cdouble> in(n_samples);
                     for (size_t i = 0; i < n_samples; ++i)
                         in[i] = {input[2 * i], input[2 * i + 1]};
                     const auto y = mtdl::apply_to_signal(trace->value, in, sample_rate_hz);
                     for (size_t i = 0; i < n_samples; ++i)
                     {
                         output[2 * i] = y[i].real();
                         output[2 * i + 1] = y[i].imag();
                     }
                     return MTDL_OK; });
}

int mtdl_trace_destroy(mtdl_trace_t trace) { return destroy(trace); }

// ---- estimation -----------------------------------------------------------

int mtdl_estimate(mtdl_trace_t trace, double threshold_db, double speed_mps, mtdl_model_t *out)
{
    if (!trace || !out)
        return null_arg(!trace ? "trace" : "out");
    return guard([&]
                 {
                     mtdl::EstimatorOptions opts;
                     opts.speed_mps = speed_mps;
                     return emit(out, mtdl::estimate_model(trace->value, threshold_db,
                                                           trace->value.meta.delay_resolution_s, opts)); });
}

int mtdl_model_num_taps(mtdl_model_t model, size_t *out)
{
    if (!model || !out)
        return null_arg(!model ? "model" : "out");
    *out = model->value.params.n_taps();
    return MTDL_OK;
}

int mtdl_model_params(mtdl_model_t model, mtdl_params_t *out)
{
    if (!model || !out)
        return null_arg(!model ? "model" : "out");
    return guard([&] { return emit(out, model->value.params); });
}

int mtdl_model_save(mtdl_model_t model, const char *path)
{
    if (!model || !path)
        return null_arg(!model ? "model" : "path");
    return guard([&]
                 {
                     mtdl::write_file_atomic(path, mtdl::model_to_text(model->value));
                     return MTDL_OK; });
}

int mtdl_model_destroy(mtdl_model_t model) { return destroy(model); }

// ---- comparison -----------------------------------------------------------

int mtdl_compare(const mtdl_trace_t *traces, const char *const *names, size_t n_traces, size_t bins, size_t window,
                 double threshold_db, mtdl_report_t *out)
{
    if (!traces || !out)
        return null_arg(!traces ? "traces" : "out");
    return guard([&]
                 {
                     std::vector<mtdl::NamedTrace> in;
                     for (size_t i = 0; i < n_traces; ++i)
                     {
                         if (!traces[i])
                             return null_arg("traces[i]");
                         std::string name = names && names[i] ? names[i] : "trace" + std::to_string(i);
                         in.push_back({std::move(name), traces[i]->value});
                     }
                     mtdl::CompareOptions opts;
                     opts.bins = bins;
                     opts.window = window;
                     opts.threshold_db = threshold_db;
                     return emit(out, mtdl::compare_traces(in, opts)); });
}

int mtdl_report_json(mtdl_report_t report, char *buf, size_t *len)
{
    if (!report)
        return null_arg("report");
    return guard([&] { return copy_text(mtdl::report_to_text(report->value), buf, len); });
}

int mtdl_report_save(mtdl_report_t report, const char *path)
{
    if (!report || !path)
        return null_arg(!report ? "report" : "path");
    return guard([&]
                 {
                     mtdl::write_file_atomic(path, mtdl::report_to_text(report->value));
                     return MTDL_OK; });
}

int mtdl_report_ks(mtdl_report_t report, size_t a, size_t b, double *out)
{
    if (!report || !out)
        return null_arg(!report ? "report" : "out");
    return guard([&]
                 {
                     *out = report->value.pair(a, b).distance.ks_stat;
                     return MTDL_OK; });
}

int mtdl_report_num_traces(mtdl_report_t report, size_t *out)
{
    if (!report || !out)
        return null_arg(!report ? "report" : "out");
    *out = report->value.traces.size();
    return MTDL_OK;
}

int mtdl_report_trace_name(mtdl_report_t report, size_t idx, char *buf, size_t *len)
{
    if (!report)
        return null_arg("report");
    if (idx >= report->value.traces.size())
        return fail(MTDL_ERROR_DOMAIN, "trace index out of range");
    return copy_text(report->value.traces[idx].name, buf, len);
}

int mtdl_report_trace_stats(mtdl_report_t report, size_t idx, double *mean_s, double *var_s2, size_t *n_windows)
{
    if (!report)
        return null_arg("report");
    if (idx >= report->value.traces.size())
        return fail(MTDL_ERROR_DOMAIN, "trace index out of range");
    const auto &t = report->value.traces[idx];
    if (mean_s)
        *mean_s = t.mean_rms_ds_s;
    if (var_s2)
        *var_s2 = t.var_rms_ds_s2;
    if (n_windows)
        *n_windows = t.rms_ds_s.size();
    return MTDL_OK;
}

int mtdl_report_occupancy(mtdl_report_t report, size_t idx, double *out, size_t capacity)
{
    if (!report || !out)
        return null_arg(!report ? "report" : "out");
    if (idx >= report->value.traces.size())
        return fail(MTDL_ERROR_DOMAIN, "trace index out of range");
    const auto &occ = report->value.traces[idx].occupancy;
    if (capacity < occ.size())
        return fail(MTDL_ERROR_BUFFER_TOO_SMALL, "need " + std::to_string(occ.size()) + " doubles");
    std::copy(occ.begin(), occ.end(), out);
    return MTDL_OK;
}

int mtdl_report_write_pdf(mtdl_report_t report, size_t idx, const char *path)
{
    if (!report || !path)
        return null_arg(!report ? "report" : "path");
    if (idx >= report->value.traces.size())
        return fail(MTDL_ERROR_DOMAIN, "trace index out of range");
    return guard([&]
                 {
                     mtdl::write_file_atomic(path, mtdl::pdf_to_text(report->value.traces[idx].normalized_pdf));
                     return MTDL_OK; });
}

int mtdl_report_destroy(mtdl_report_t report) { return destroy(report); }

// ---- manifests ------------------------------------------------------------

int mtdl_manifest_create(mtdl_manifest_t *out, const char *command, const char *config_json)
{
    if (!out || !command)
        return null_arg(!out ? "out" : "command");
    return guard([&]
                 {
                     mtdl::RunManifest m;
                     m.command = command;
                     m.config = config_json ? config_json : "{}";
                     return emit(out, std::move(m)); });
}

int mtdl_manifest_add_seed(mtdl_manifest_t m, uint64_t seed)
{
    if (!m)
        return null_arg("manifest");
    m->value.seeds.push_back(seed);
    return MTDL_OK;
}

int mtdl_manifest_add_input(mtdl_manifest_t m, const char *path)
{
    if (!m || !path)
        return null_arg(!m ? "manifest" : "path");
    return guard([&]
                 {
                     std::string digest = mtdl::file_sha256(path);
                     m->value.inputs.push_back({path, std::move(digest)});
                     return MTDL_OK; });
}

int mtdl_manifest_add_output(mtdl_manifest_t m, const char *path)
{
    if (!m || !path)
        return null_arg(!m ? "manifest" : "path");
    return guard([&]
                 {
                     std::string digest = mtdl::file_sha256(path);
                     m->value.outputs.push_back({path, std::move(digest)});
                     return MTDL_OK; });
}

int mtdl_manifest_save(mtdl_manifest_t m, const char *path)
{
    if (!m || !path)
        return null_arg(!m ? "manifest" : "path");
    return guard([&]
                 {
                     mtdl::save_manifest(path, m->value);
                     return MTDL_OK; });
}

int mtdl_manifest_destroy(mtdl_manifest_t m) { return destroy(m); }

int mtdl_manifest_verify(const char *manifest_path)
{
    if (!manifest_path)
        return null_arg("manifest_path");
    return guard([&]() -> int
                 {
                     const auto check = mtdl::verify_manifest(manifest_path);
                     std::string msg;
                     for (const auto &s : check.messages)
                         msg += (msg.empty() ? "" : "\n") + s;
                     if (!check.ok)
                         return fail(MTDL_ERROR_MISMATCH, msg);
                     g_last_error = msg;
                     return MTDL_OK; });
}

int mtdl_manifest_path_for(const char *output_path, char *buf, size_t *len)
{
    if (!output_path)
        return null_arg("output_path");
    return copy_text(mtdl::manifest_path_for(output_path), buf, len);
}

int mtdl_file_sha256(const char *path, char out[65])
{
    if (!path || !out)
        return null_arg(!path ? "path" : "out");
    return guard([&]
                 {
                     const auto h = mtdl::file_sha256(path);
                     std::memcpy(out, h.c_str(), 65);
                     return MTDL_OK; });
}

} // extern "C"
