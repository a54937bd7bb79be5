// SPDX-License-Identifier: Apache-2.0
//
// hbf: hybrid analog/digital transceiver design for MIMO interference channels
// Copyright (C) 2026 The hbf authors
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

#include "hbf/error.hpp"
#include "hbf/model.hpp"

#include <cmath>
#include <string>

namespace hbf
{
    void SystemConfig::validate() const
    {
        if (pairs.empty())
            throw InvalidDimension("SystemConfig: at least one pair is required");

        for (std::size_t k = 0; k < pairs.size(); ++k)
        {
            const PairConfig &p = pairs[k];
            std::string tag = "SystemConfig pair " + std::to_string(k) + ": ";
            if (p.ns < 1)
                throw InvalidDimension(tag + "Ns must be >= 1");
            if (!(p.ns <= p.nt_rf && p.nt_rf <= p.nt))
                throw InvalidDimension(tag + "requires Ns <= NtRF <= Nt");
            if (!(p.ns <= p.nr_rf && p.nr_rf <= p.nr))
                throw InvalidDimension(tag + "requires Ns <= NrRF <= Nr");
            if (!(p.power > 0.0) || !std::isfinite(p.power))
                throw InvalidInput(tag + "power must be positive");
            if (!(p.noise > 0.0) || !std::isfinite(p.noise))
                throw InvalidInput(tag + "noise variance must be positive");
        }
    }

    SystemConfig SystemConfig::uniform(Index users, Index nt, Index nr, Index n_rf, Index ns,
                                       double power, double noise)
    {
        SystemConfig c;
        if (users < 1)
            throw InvalidDimension("SystemConfig: at least one pair is required");
        c.pairs.assign(std::size_t(users), PairConfig{nt, nr, n_rf, n_rf, ns, power, noise});
        return c;
    }
}
