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

#ifndef HBF_RNG_HPP
#define HBF_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace hbf
{
    // Philox4x32-10 block function (Salmon et al., SC'11).
    // Maps a 128-bit counter and a 64-bit key to 128 random bits.
    std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key);

    struct RngSpec
    {
        std::uint64_t seed = 0;
        std::uint64_t stream_id = 0;

        // Independent stream family for a different purpose (solver init, bootstrap ...)
        RngSpec derive(std::uint64_t tag) const;
    };

    // Counter-based generator. The key is the seed, the upper counter half is the
    // stream id and the lower half counts blocks, so streams never overlap and a
    // trial draws the same numbers no matter which thread runs it.
    //
    // Normal deviates use Box-Muller on our own uniform mapping rather than
    // std::normal_distribution, whose output is implementation-defined.
    class Rng
    {
    public:
        explicit Rng(RngSpec spec);
        Rng(std::uint64_t seed, std::uint64_t stream_id);

        std::uint64_t next_u64();
        double uniform();                   // [0, 1) with 53 random bits
        double normal();                    // N(0, 1)
        std::complex<double> cnormal();     // CN(0, 1), two N(0, 1/2) parts
        double angle();                     // uniform on [0, 2pi)
        std::uint64_t below(std::uint64_t n); // uniform integer on [0, n)

    private:
        void refill();

        std::array<std::uint32_t, 2> key_;
        std::uint64_t stream_;
        std::uint64_t block_ = 0;
        std::array<std::uint32_t, 4> buf_{};
        int pos_ = 4;
        bool have_spare_ = false;
        double spare_ = 0.0;
    };
}

#endif
