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

#include <string>
#include <string_view>
#include <vector>

namespace mtdl
{
    inline constexpr const char *kVersionTag = "mtdl-1.0.0";

    std::string sha256_hex(std::string_view bytes);
    std::string file_sha256(const std::string &path);

    struct FileDigest
    {
        std::string path;
        std::string sha256;
    };

    // Record of one command invocation. Contains no timestamps so identical
    // runs produce identical manifests.
    struct RunManifest
    {
        std::string command;
        std::string config;  // canonical JSON echo of the run's configuration
        std::vector<std::uint64_t> seeds;
        std::string version = kVersionTag;
        std::vector<FileDigest> inputs;
        std::vector<FileDigest> outputs;
    };

    std::string manifest_to_text(const RunManifest &m);
    RunManifest manifest_from_text(std::string_view text);

    std::string manifest_path_for(const std::string &output_path);

    // Writes atomically; file paths are stored relative to the manifest's
    // directory so a run directory can be moved as a whole.
    void save_manifest(const std::string &path, RunManifest m);

    struct ManifestCheck
    {
        bool ok = true;
        std::vector<std::string> messages;
    };

    // Re-hashes every listed file. For `generate` manifests the trace is
    // also regenerated from the echoed config and its digest compared.
    ManifestCheck verify_manifest(const std::string &manifest_path);

} // namespace mtdl
