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

#include "hbf/rng.hpp"

#include <cmath>
#include <numbers>

namespace hbf
{
    namespace
    {
        constexpr std::uint32_t kMul0 = 0xD2511F53u;
        constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
        constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
        constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

        inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
        {
            std::uint64_t p = std::uint64_t(a) * std::uint64_t(b);
            hi = std::uint32_t(p >> 32);
            lo = std::uint32_t(p);
        }

        // splitmix64 finalizer, only used to scramble derived seeds
        inline std::uint64_t mix64(std::uint64_t z)
        {
            z += 0x9E3779B97F4A7C15ull;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            return z ^ (z >> 31);
        }
    }

    std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key)
    {
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(kMul0, ctr[0], hi0, lo0);
            mulhilo(kMul1, ctr[2], hi1, lo1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

    RngSpec RngSpec::derive(std::uint64_t tag) const
    {
        return {mix64(seed ^ mix64(tag)), stream_id};
    }

    Rng::Rng(RngSpec spec)
        : key_{std::uint32_t(spec.seed), std::uint32_t(spec.seed >> 32)}, stream_(spec.stream_id)
    {
    }

    Rng::Rng(std::uint64_t seed, std::uint64_t stream_id) : Rng(RngSpec{seed, stream_id}) {}

    void Rng::refill()
    {
        std::array<std::uint32_t, 4> ctr = {std::uint32_t(block_), std::uint32_t(block_ >> 32),
                                            std::uint32_t(stream_), std::uint32_t(stream_ >> 32)};
        buf_ = philox4x32_10(ctr, key_);
        ++block_;
        pos_ = 0;
    }

    std::uint64_t Rng::next_u64()
    {
        if (pos_ > 2)
            refill();
        std::uint64_t lo = buf_[pos_], hi = buf_[pos_ + 1];
        pos_ += 2;
        return (hi << 32) | lo;
    }

    double Rng::uniform()
    {
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    double Rng::normal()
    {
        if (have_spare_)
        {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    std::complex<double> Rng::cnormal()
    {
        double re = normal();
        double im = normal();
        return {re * std::numbers::sqrt2 * 0.5, im * std::numbers::sqrt2 * 0.5};
    }

    double Rng::angle()
    {
        return 2.0 * std::numbers::pi * uniform();
    }

    std::uint64_t Rng::below(std::uint64_t n)
    {
        // Lemire's multiply-shift with rejection
        unsigned __int128 m = (unsigned __int128)next_u64() * n;
        std::uint64_t l = std::uint64_t(m);
        if (l < n)
        {
            std::uint64_t t = -n % n;
            while (l < t)
            {
                m = (unsigned __int128)next_u64() * n;
                l = std::uint64_t(m);
            }
        }
        return std::uint64_t(m >> 64);
    }
}
