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

// Strict field access over nlohmann::json objects: every missing key, type
// mismatch or unknown key becomes a ParseError naming the field path.

#include <mtdl/errors.hpp>
#include <mtdl/params.hpp>

#include <json.hpp>

#include <set>
#include <string>

namespace mtdl::detail
{
    using json = nlohmann::json;

    class Fields
    {
    public:
        Fields(const json &obj, std::string path) : obj_(obj), path_(std::move(path))
        {
            if (!obj_.is_object())
                throw ParseError("expected an object", display(path_));
        }

        std::string child(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

        bool has(const std::string &key) const { return obj_.contains(key); }

        const json &raw(const std::string &key)
        {
            if (!obj_.contains(key))
                throw ParseError("missing required field", child(key));
            seen_.insert(key);
            return obj_.at(key);
        }

        double number(const std::string &key)
        {
            const auto &v = raw(key);
            if (!v.is_number())
                throw ParseError("expected a number", child(key));
            return v.get<double>();
        }

        double number_or(const std::string &key, double fallback) { return has(key) ? number(key) : fallback; }

        std::uint64_t unsigned_int(const std::string &key)
        {
            const auto &v = raw(key);
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
                throw ParseError("expected a nonnegative integer", child(key));
            return v.get<std::uint64_t>();
        }

        std::string string(const std::string &key)
        {
            const auto &v = raw(key);
            if (!v.is_string())
                throw ParseError("expected a string", child(key));
            return v.get<std::string>();
        }

        const json &array(const std::string &key)
        {
            const auto &v = raw(key);
            if (!v.is_array())
                throw ParseError("expected an array", child(key));
            return v;
        }

        const json &object(const std::string &key)
        {
            const auto &v = raw(key);
            if (!v.is_object())
                throw ParseError("expected an object", child(key));
            return v;
        }

        // Rejects keys that were never read.
        void finish() const
        {
            for (auto it = obj_.begin(); it != obj_.end(); ++it)
                if (!seen_.count(it.key()))
                    throw ParseError("unknown key", child(it.key()));
        }

    private:
        static std::string display(const std::string &p) { return p.empty() ? "<root>" : p; }

        const json &obj_;
        std::string path_;
        std::set<std::string> seen_;
    };

    // Parses JSON text, mapping syntax errors to "line L, column C".
    json parse_json_text(std::string_view text);

    // Parameter block reader/writer shared by params files, model files and
    // inline config parameters.
    TapParameterSet params_from_json(const json &j, const std::string &path, bool require_schema);
    json params_json(const TapParameterSet &p);

} // namespace mtdl::detail
