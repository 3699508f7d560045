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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace mtdl
{
    using cdouble = std::complex<double>;

    // Dense row-major matrix used for snapshot x tap data.
    template <typename T>
    class Table
    {
    public:
        Table() = default;
        Table(std::size_t rows, std::size_t cols, T fill = T{})
            : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        bool empty() const noexcept { return data_.empty(); }

        T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        const T &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

        std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
        std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

        std::vector<T> column(std::size_t c) const
        {
            std::vector<T> out(rows_);
            for (std::size_t r = 0; r < rows_; ++r)
                out[r] = (*this)(r, c);
            return out;
        }

        std::vector<T> &data() noexcept { return data_; }
        const std::vector<T> &data() const noexcept { return data_; }

        bool operator==(const Table &) const = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<T> data_;
    };

    inline constexpr std::uint32_t kGeneratorVersion = 1;

    struct TraceMeta
    {
        double carrier_hz = 2.16e9;
        double delay_resolution_s = 100e-9;
        std::uint64_t rng_seed = 0;
        std::uint32_t generator_version = kGeneratorVersion;
        // True for traces straight out of a generator: no additive noise, so
        // the noise floor is -inf and dead taps are exact zeros.
        bool noiseless = true;

        bool operator==(const TraceMeta &) const = default;
    };

    // Sampled h(tau, t): one row per snapshot, one column per tap.
    struct CirTrace
    {
        Table<cdouble> gains;
        std::vector<double> delays_s;
        double snapshot_interval_s = 1e-3;
        TraceMeta meta;

        std::size_t n_snapshots() const noexcept { return gains.rows(); }
        std::size_t n_taps() const noexcept { return gains.cols(); }

        bool operator==(const CirTrace &) const = default;
    };

    // Checks the structural invariants (>= 1 row, delays strictly increasing
    // and matching the column count). Throws DomainError.
    void check_trace(const CirTrace &trace);

} // namespace mtdl
