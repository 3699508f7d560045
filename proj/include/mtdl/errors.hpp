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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtdl
{
    // Argument outside an operation's domain (maps to exit code 3 / MTDL_ERROR_DOMAIN).
    class DomainError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Malformed input file or config. `location` is a human readable position
    // such as "line 4, column 12", "byte 40" or a field path.
    class ParseError : public std::runtime_error
    {
    public:
        ParseError(const std::string &what, std::string location)
            : std::runtime_error(location.empty() ? what : location + ": " + what),
              location_(std::move(location)) {}

        const std::string &location() const noexcept { return location_; }

    private:
        std::string location_;
    };

    // Semantically invalid parameter set; carries every violation found.
    class ValidationError : public std::runtime_error
    {
    public:
        explicit ValidationError(std::vector<std::string> violations)
            : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

        const std::vector<std::string> &violations() const noexcept { return violations_; }

    private:
        static std::string join(const std::vector<std::string> &v)
        {
            std::string out = "validation failed";
            for (const auto &s : v)
                out += "\n  " + s;
            return out;
        }

        std::vector<std::string> violations_;
    };

    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

} // namespace mtdl
