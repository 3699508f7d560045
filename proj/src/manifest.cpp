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
#include <mtdl/estimator.hpp>
#include <mtdl/manifest.hpp>
#include <mtdl/serialize.hpp>
#include <mtdl/trace_io.hpp>

#include <openssl/evp.h>

#include <filesystem>
#include <memory>
#include <utility>

namespace mtdl
{
    using detail::json;
    namespace fs = std::filesystem;

    std::string sha256_hex(std::string_view bytes)
    {
        std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
            EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
            EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
            throw std::runtime_error("sha256: digest computation failed");

        static constexpr char hex[] = "0123456789abcdef";
        std::string out;
        out.reserve(2 * len);
        for (unsigned int i = 0; i < len; ++i)
        {
            out.push_back(hex[digest[i] >> 4]);
            out.push_back(hex[digest[i] & 0xF]);
        }
        return out;
    }

    std::string file_sha256(const std::string &path) { return sha256_hex(read_file(path)); }

    std::string manifest_path_for(const std::string &output_path) { return output_path + ".manifest.json"; }

    std::string manifest_to_text(const RunManifest &m)
    {
        json j;
        j["command"] = m.command;
        // Embed the echo as structured JSON when it is JSON, else as a string.
        json cfg = json::parse(m.config, nullptr, false);
        j["config"] = cfg.is_discarded() ? json(m.config) : cfg;
        j["seeds"] = m.seeds;
        j["version"] = m.version;
        auto files = [](const std::vector<FileDigest> &v)
        {
            json arr = json::array();
            for (const auto &f : v)
                arr.push_back({{"path", f.path}, {"sha256", f.sha256}});
            return arr;
        };
        j["inputs"] = files(m.inputs);
        j["outputs"] = files(m.outputs);
        return j.dump(2) + "\n";
    }

    RunManifest manifest_from_text(std::string_view text)
    {
        const json j = detail::parse_json_text(text);
        detail::Fields f(j, "");
        RunManifest m;
        m.command = f.string("command");
        const auto &cfg = f.raw("config");
        m.config = cfg.is_string() ? cfg.get<std::string>() : cfg.dump();
        for (const auto &s : f.array("seeds"))
        {
            if (!s.is_number_unsigned())
                throw ParseError("expected a nonnegative integer", "seeds");
            m.seeds.push_back(s.get<std::uint64_t>());
        }
        m.version = f.string("version");
        auto files = [&](const std::string &key)
        {
            std::vector<FileDigest> out;
            const auto &arr = f.array(key);
            for (std::size_t i = 0; i < arr.size(); ++i)
            {
                detail::Fields e(arr[i], key + "[" + std::to_string(i) + "]");
                FileDigest d;
                d.path = e.string("path");
                d.sha256 = e.string("sha256");
                out.push_back(std::move(d));
                e.finish();
            }
            return out;
        };
        m.inputs = files("inputs");
        m.outputs = files("outputs");
        f.finish();
        return m;
    }

    void save_manifest(const std::string &path, RunManifest m)
    {
        const fs::path base = fs::absolute(fs::path(path)).parent_path();
        auto rel = [&](FileDigest &d)
        { d.path = fs::proximate(fs::absolute(d.path), base).generic_string(); };
        for (auto &d : m.inputs)
            rel(d);
        for (auto &d : m.outputs)
            rel(d);
        write_file_atomic(path, manifest_to_text(m));
    }

    namespace
    {
        std::string regenerate_output(const RunManifest &m, const fs::path &base, const std::string &existing_digest)
        {
            if (m.command == "generate")
            {
                const auto trace = run_generate(parse_run_config(m.config));
                const auto bin = sha256_hex(serialize_trace(trace, TraceFormat::Binary));
                if (bin == existing_digest)
                    return bin;
                return sha256_hex(serialize_trace(trace, TraceFormat::Text));
            }
            if (m.command == "estimate")
            {
                if (m.inputs.empty())
                    throw DomainError("estimate manifest lists no input trace");
                const json cfg = json::parse(m.config);
                const auto trace = read_trace((base / m.inputs.front().path).string());
                EstimatorOptions opts;
                opts.speed_mps = cfg.at("speed_mps").get<double>();
                const auto model = estimate_model(trace, cfg.at("threshold_db").get<double>(),
                                                  trace.meta.delay_resolution_s, opts);
                return sha256_hex(model_to_text(model));
            }
            return {};
        }
    } // namespace

    ManifestCheck verify_manifest(const std::string &manifest_path)
    {
        ManifestCheck check;
        auto fail = [&](const std::string &msg)
        {
            check.ok = false;
            check.messages.push_back(msg);
        };

        const auto m = manifest_from_text(read_file(manifest_path));
        const fs::path base = fs::absolute(fs::path(manifest_path)).parent_path();

        auto rehash = [&](const std::vector<FileDigest> &files, const char *kind)
        {
            for (const auto &f : files)
            {
                const auto p = (base / f.path).string();
                std::string digest;
                try
                {
                    digest = file_sha256(p);
                }
                catch (const IoError &)
                {
                    fail(std::string(kind) + " missing: " + f.path);
                    continue;
                }
                if (digest != f.sha256)
                    fail(std::string(kind) + " digest mismatch: " + f.path);
            }
        };
        rehash(m.inputs, "input");
        rehash(m.outputs, "output");

        if (!m.outputs.empty())
        {
            try
            {
                const auto regenerated = regenerate_output(m, base, m.outputs.front().sha256);
                if (!regenerated.empty() && regenerated != m.outputs.front().sha256)
                    fail("re-running '" + m.command + "' does not reproduce " + m.outputs.front().path);
            }
            catch (const std::exception &e)
            {
                fail(std::string("re-run failed: ") + e.what());
            }
        }
        if (check.ok)
            check.messages.push_back("manifest verified: " + std::to_string(m.inputs.size() + m.outputs.size()) +
                                     " file(s)");
        return check;
    }

} // namespace mtdl
