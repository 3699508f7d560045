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
#include <mtdl/trace.hpp>

namespace mtdl
{
    void check_trace(const CirTrace &trace)
    {
        if (trace.n_snapshots() == 0 || trace.n_taps() == 0)
            throw DomainError("trace is empty");
        if (trace.delays_s.size() != trace.n_taps())
            throw DomainError("trace delay vector does not match tap count");
        for (std::size_t l = 1; l < trace.delays_s.size(); ++l)
            if (!(trace.delays_s[l] > trace.delays_s[l - 1]))
                throw DomainError("trace delays not strictly increasing");
        if (!(trace.snapshot_interval_s > 0.0))
            throw DomainError("trace snapshot interval must be positive");
    }

} // namespace mtdl
