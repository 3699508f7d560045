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

// Small fixtures shared by the test suites.

#pragma once

#include <mtdl/trace.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

namespace testing
{
    // Fresh directory under the system temp dir, removed on destruction.
    class TempDir
    {
    public:
        TempDir()
        {
            std::string templ = (std::filesystem::temp_directory_path() / "mtdl-test-XXXXXX").string();
            path_ = ::mkdtemp(templ.data());
        }
        ~TempDir()
        {
            std::error_code ec;
            std::filesystem::remove_all(path_, ec);
        }
        TempDir(const TempDir &) = delete;
        TempDir &operator=(const TempDir &) = delete;

        std::string file(const std::string &name) const { return (path_ / name).string(); }
        const std::filesystem::path &path() const { return path_; }

    private:
        std::filesystem::path path_;
    };

    // Trace with the given constant gains per tap, delays k * 100 ns.
    inline mtdl::CirTrace constant_trace(const std::vector<mtdl::cdouble> &gains, std::size_t n)
    {
        mtdl::CirTrace t;
        t.gains = mtdl::Table<mtdl::cdouble>(n, gains.size());
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < gains.size(); ++c)
                t.gains(r, c) = gains[c];
        for (std::size_t c = 0; c < gains.size(); ++c)
            t.delays_s.push_back(static_cast<double>(c) * 100e-9);
        return t;
    }
} // namespace testing
