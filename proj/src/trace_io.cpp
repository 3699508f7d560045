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

#include <mtdl/errors.hpp>
#include <mtdl/trace_io.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <unistd.h>

namespace mtdl
{
    std::int64_t seconds_to_ps(double seconds) { return std::llround(seconds * 1e12); }
    double ps_to_seconds(std::int64_t ps) { return static_cast<double>(ps) / 1e12; }

    namespace
    {
        constexpr std::uint32_t kFlagNoiseless = 1u;
        constexpr const char *kTextTag = "mtdl-cir-text";

        class LeWriter
        {
        public:
            void bytes(const void *p, std::size_t n) { out_.append(static_cast<const char *>(p), n); }

            void u32(std::uint32_t v)
            {
                for (int i = 0; i < 4; ++i)
                    out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
            }

            void u64(std::uint64_t v)
            {
                for (int i = 0; i < 8; ++i)
                    out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
            }

            void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
            void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

            std::string take() { return std::move(out_); }

        private:
            std::string out_;
        };

        class LeReader
        {
        public:
            explicit LeReader(std::string_view data) : data_(data) {}

            std::size_t offset() const noexcept { return pos_; }

            std::uint64_t uint(int width)
            {
                if (data_.size() - pos_ < static_cast<std::size_t>(width))
                    throw ParseError("unexpected end of data", "byte " + std::to_string(data_.size()));
                std::uint64_t v = 0;
                for (int i = 0; i < width; ++i)
                    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
                pos_ += width;
                return v;
            }

            std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
            std::uint64_t u64() { return uint(8); }
            std::int64_t i64() { return static_cast<std::int64_t>(uint(8)); }
            double f64() { return std::bit_cast<double>(uint(8)); }

        private:
            std::string_view data_;
            std::size_t pos_ = 0;
        };

        ParseError at_byte(std::size_t offset, const std::string &what)
        {
            return ParseError(what, "byte " + std::to_string(offset));
        }

        std::string serialize_binary(const CirTrace &trace)
        {
            LeWriter w;
            w.bytes(kTraceMagic, sizeof kTraceMagic);
            w.u32(kTraceFormatVersion);
            w.u32(trace.meta.noiseless ? kFlagNoiseless : 0u);
            w.u64(trace.n_snapshots());
            w.u64(trace.n_taps());
            w.i64(seconds_to_ps(trace.snapshot_interval_s));
            w.i64(seconds_to_ps(trace.meta.delay_resolution_s));
            w.f64(trace.meta.carrier_hz);
            w.u64(trace.meta.rng_seed);
            w.u32(trace.meta.generator_version);
            w.u32(0);
            for (double d : trace.delays_s)
                w.i64(seconds_to_ps(d));
            for (const auto &g : trace.gains.data())
            {
                w.f64(g.real());
                w.f64(g.imag());
            }
            return w.take();
        }

        std::string fmt_double(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::string serialize_text(const CirTrace &trace)
        {
            std::ostringstream os;
            os << "# " << kTextTag << " " << kTraceFormatVersion << "\n";
            os << "noiseless " << (trace.meta.noiseless ? 1 : 0) << "\n";
            os << "n_snapshots " << trace.n_snapshots() << "\n";
            os << "n_taps " << trace.n_taps() << "\n";
            os << "snapshot_interval_ps " << seconds_to_ps(trace.snapshot_interval_s) << "\n";
            os << "delay_resolution_ps " << seconds_to_ps(trace.meta.delay_resolution_s) << "\n";
            os << "carrier_hz " << fmt_double(trace.meta.carrier_hz) << "\n";
            os << "rng_seed " << trace.meta.rng_seed << "\n";
            os << "generator_version " << trace.meta.generator_version << "\n";
            os << "delays_ps";
            for (double d : trace.delays_s)
                os << " " << seconds_to_ps(d);
            os << "\n# one row per snapshot: re im per tap\n";
            for (std::size_t t = 0; t < trace.n_snapshots(); ++t)
            {
                for (std::size_t l = 0; l < trace.n_taps(); ++l)
                {
                    const auto g = trace.gains(t, l);
                    os << (l ? " " : "") << fmt_double(g.real()) << " " << fmt_double(g.imag());
                }
                os << "\n";
            }
            return os.str();
        }

        void check_delays(const std::vector<std::int64_t> &ps, const std::function<ParseError(std::size_t, const std::string &)> &err)
        {
            for (std::size_t l = 0; l < ps.size(); ++l)
            {
                if (ps[l] < 0)
                    throw err(l, "negative tap delay");
                if (l > 0 && ps[l] <= ps[l - 1])
                    throw err(l, "tap delays not strictly increasing");
            }
        }

        CirTrace parse_binary(std::string_view data)
        {
            LeReader r(data);
            if (data.size() < kTraceHeaderSize)
                throw at_byte(data.size(), "truncated header (need " + std::to_string(kTraceHeaderSize) + " bytes)");
            r.u64(); // magic, checked by the caller

            CirTrace trace;
            const auto version = r.u32();
            if (version != kTraceFormatVersion)
                throw at_byte(8, "unsupported format version " + std::to_string(version));
            const auto flags = r.u32();
            const auto n = r.u64();
            const auto L = r.u64();
            if (n == 0)
                throw at_byte(16, "n_snapshots is zero");
            if (L == 0)
                throw at_byte(24, "n_taps is zero");
            const auto interval_ps = r.i64();
            if (interval_ps <= 0)
                throw at_byte(32, "snapshot interval must be positive");
            const auto res_ps = r.i64();
            if (res_ps <= 0)
                throw at_byte(40, "delay resolution must be positive");
            trace.meta.carrier_hz = r.f64();
            trace.meta.rng_seed = r.u64();
            trace.meta.generator_version = r.u32();
            r.u32();
            trace.meta.noiseless = (flags & kFlagNoiseless) != 0;
            trace.snapshot_interval_s = ps_to_seconds(interval_ps);
            trace.meta.delay_resolution_s = ps_to_seconds(res_ps);

            const std::uint64_t remaining = data.size() - kTraceHeaderSize;
            if (L > remaining / 8)
                throw at_byte(data.size(), "truncated delay table");
            const std::uint64_t cells_bytes = remaining - 8 * L;
            if (n > cells_bytes / 16 / L)
                throw at_byte(data.size(), "truncated gain matrix (expected " + std::to_string(n) + " x " +
                                               std::to_string(L) + " complex values)");
            const std::uint64_t expected = kTraceHeaderSize + 8 * L + 16 * n * L;
            if (data.size() != expected)
                throw at_byte(expected, "trailing bytes after gain matrix");

            std::vector<std::int64_t> ps(L);
            for (auto &d : ps)
                d = r.i64();
            check_delays(ps, [](std::size_t l, const std::string &what)
                         { return at_byte(kTraceHeaderSize + 8 * l, what); });
            for (auto d : ps)
                trace.delays_s.push_back(ps_to_seconds(d));

            trace.gains = Table<cdouble>(n, L);
            for (auto &g : trace.gains.data())
            {
                const std::size_t off = r.offset();
                const double re = r.f64(), im = r.f64();
                if (!std::isfinite(re) || !std::isfinite(im))
                    throw at_byte(off, "non-finite gain");
                g = {re, im};
            }
            return trace;
        }

        CirTrace parse_text(std::string_view data)
        {
            std::istringstream in{std::string(data)};
            std::string line;
            std::size_t line_no = 0;
            auto err = [&](const std::string &what) { return ParseError(what, "line " + std::to_string(line_no)); };

            // Next line that is not blank or a comment.
            auto next = [&]() -> bool
            {
                while (std::getline(in, line))
                {
                    ++line_no;
                    const auto first = line.find_first_not_of(" \t\r");
                    if (first == std::string::npos || line[first] == '#')
                        continue;
                    return true;
                }
                return false;
            };

            auto field = [&](const char *key) -> std::istringstream
            {
                if (!next())
                    throw err(std::string("missing field ") + key);
                std::istringstream ls(line);
                std::string k;
                ls >> k;
                if (k != key)
                    throw err(std::string("expected ") + key + ", found '" + k + "'");
                return ls;
            };

            auto read_value = [&](std::istringstream &ls, auto &v, const char *key)
            {
                if (!(ls >> v))
                    throw err(std::string("bad value for ") + key);
            };

            CirTrace trace;
            int noiseless = 0;
            std::uint64_t n = 0, L = 0;
            std::int64_t interval_ps = 0, res_ps = 0;
            {
                auto ls = field("noiseless");
                read_value(ls, noiseless, "noiseless");
            }
            {
                auto ls = field("n_snapshots");
                read_value(ls, n, "n_snapshots");
            }
            {
                auto ls = field("n_taps");
                read_value(ls, L, "n_taps");
            }
            {
                auto ls = field("snapshot_interval_ps");
                read_value(ls, interval_ps, "snapshot_interval_ps");
            }
            {
                auto ls = field("delay_resolution_ps");
                read_value(ls, res_ps, "delay_resolution_ps");
            }
            {
                auto ls = field("carrier_hz");
                std::string tok;
                read_value(ls, tok, "carrier_hz");
                trace.meta.carrier_hz = std::strtod(tok.c_str(), nullptr);
            }
            {
                auto ls = field("rng_seed");
                read_value(ls, trace.meta.rng_seed, "rng_seed");
            }
            {
                auto ls = field("generator_version");
                read_value(ls, trace.meta.generator_version, "generator_version");
            }
            if (n == 0 || L == 0)
                throw err("empty trace");
            if (interval_ps <= 0 || res_ps <= 0)
                throw err("snapshot interval and delay resolution must be positive");

            std::vector<std::int64_t> ps(L);
            {
                auto ls = field("delays_ps");
                for (auto &d : ps)
                    read_value(ls, d, "delays_ps");
                check_delays(ps, [&](std::size_t, const std::string &what) { return err(what); });
            }

            trace.meta.noiseless = noiseless != 0;
            trace.snapshot_interval_s = ps_to_seconds(interval_ps);
            trace.meta.delay_resolution_s = ps_to_seconds(res_ps);
            for (auto d : ps)
                trace.delays_s.push_back(ps_to_seconds(d));

            trace.gains = Table<cdouble>(n, L);
            for (std::size_t t = 0; t < n; ++t)
            {
                if (!next())
                    throw err("missing gain row " + std::to_string(t));
                std::istringstream ls(line);
                for (std::size_t l = 0; l < L; ++l)
                {
                    std::string re, im;
                    if (!(ls >> re >> im))
                        throw err("gain row has fewer than " + std::to_string(L) + " complex values");
                    char *end = nullptr;
                    const double vr = std::strtod(re.c_str(), &end);
                    if (*end)
                        throw err("bad number '" + re + "'");
                    const double vi = std::strtod(im.c_str(), &end);
                    if (*end)
                        throw err("bad number '" + im + "'");
                    trace.gains(t, l) = {vr, vi};
                }
            }
            if (next())
                throw err("unexpected data after gain matrix");
            return trace;
        }
    } // namespace

    std::string serialize_trace(const CirTrace &trace, TraceFormat format)
    {
        return format == TraceFormat::Binary ? serialize_binary(trace) : serialize_text(trace);
    }

    CirTrace parse_trace(std::string_view bytes)
    {
        if (bytes.empty())
            throw at_byte(0, "empty trace file");
        if (bytes.size() >= sizeof kTraceMagic && std::memcmp(bytes.data(), kTraceMagic, sizeof kTraceMagic) == 0)
            return parse_binary(bytes);
        const std::string text_magic = std::string("# ") + kTextTag;
        if (bytes.substr(0, text_magic.size()) == text_magic)
            return parse_text(bytes);
        throw at_byte(0, "unrecognized trace format (bad magic)");
    }

    std::string read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_file_atomic(const std::string &path, std::string_view bytes)
    {
        namespace fs = std::filesystem;
        const fs::path target(path);
        fs::path tmp = target;
        tmp += ".tmp." + std::to_string(::getpid());
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IoError("cannot write '" + tmp.string() + "'");
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            out.flush();
            if (!out)
                throw IoError("write failed for '" + tmp.string() + "'");
        }
        std::error_code ec;
        fs::rename(tmp, target, ec);
        if (ec)
        {
            fs::remove(tmp, ec);
            throw IoError("cannot move output into place at '" + path + "'");
        }
    }

    void write_trace(const std::string &path, const CirTrace &trace, TraceFormat format)
    {
        check_trace(trace);
        write_file_atomic(path, serialize_trace(trace, format));
    }

    CirTrace read_trace(const std::string &path) { return parse_trace(read_file(path)); }

} // namespace mtdl
