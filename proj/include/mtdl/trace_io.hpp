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

#include <mtdl/trace.hpp>

#include <string>
#include <string_view>

namespace mtdl
{
    enum class TraceFormat
    {
        Binary,
        Text
    };

    // Binary layout, all fields little-endian:
    //
    //   offset  size  field
    //        0     8  magic "MTDLCIR1"
    //        8     4  u32 format version (1)
    //       12     4  u32 flags (bit 0: noiseless)
    //       16     8  u64 n_snapshots
    //       24     8  u64 n_taps (L)
    //       32     8  i64 snapshot interval, picoseconds
    //       40     8  i64 delay resolution, picoseconds
    //       48     8  f64 carrier, Hz
    //       56     8  u64 rng seed
    //       64     4  u32 generator version
    //       68     4  reserved, zero
    //       72   8*L  i64 tap delays, picoseconds
    //        …        n_snapshots * L * (f64 re, f64 im), row-major
    //
    // Dead taps are stored as exact zeros.
    inline constexpr char kTraceMagic[8] = {'M', 'T', 'D', 'L', 'C', 'I', 'R', '1'};
    inline constexpr std::uint32_t kTraceFormatVersion = 1;
    inline constexpr std::size_t kTraceHeaderSize = 72;

    std::string serialize_trace(const CirTrace &trace, TraceFormat format = TraceFormat::Binary);

    // Detects the format. Throws ParseError whose location is a byte offset
    // (binary) or a line number (text).
    CirTrace parse_trace(std::string_view bytes);

    void write_trace(const std::string &path, const CirTrace &trace, TraceFormat format = TraceFormat::Binary);
    CirTrace read_trace(const std::string &path);

    // Whole-file helpers. write_file_atomic writes a sibling temp file and
    // renames it over the target.
    std::string read_file(const std::string &path);
    void write_file_atomic(const std::string &path, std::string_view bytes);

    std::int64_t seconds_to_ps(double seconds);
    double ps_to_seconds(std::int64_t ps);

} // namespace mtdl
