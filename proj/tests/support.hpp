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


#ifndef HBF_TESTS_SUPPORT_HPP
#define HBF_TESTS_SUPPORT_HPP

#include "hbf/model.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hbf_test
{
    using namespace hbf;

    inline MatrixXcd random_complex(Index rows, Index cols, Rng &rng)
    {
        MatrixXcd m(rows, cols);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i)
                m(i, j) = rng.cnormal();
        return m;
    }

    // X X^H + shift I
    inline MatrixXcd random_hpd(Index n, Rng &rng, double shift = 0.1)
    {
        MatrixXcd x = random_complex(n, n, rng);
        MatrixXcd a = x * x.adjoint() + shift * MatrixXcd::Identity(n, n);
        return 0.5 * (a + a.adjoint());
    }

    inline MatrixXcd random_psd(Index n, Index rank, Rng &rng)
    {
        MatrixXcd x = random_complex(n, rank, rng);
        MatrixXcd a = x * x.adjoint();
        return 0.5 * (a + a.adjoint());
    }

    inline double max_modulus_error(const MatrixXcd &m)
    {
        double e = 0.0;
        for (Index j = 0; j < m.cols(); ++j)
            for (Index i = 0; i < m.rows(); ++i)
                e = std::max(e, std::abs(std::abs(m(i, j)) - 1.0));
        return e;
    }

    inline double rel_diff(double a, double b)
    {
        return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
    }

    // Least-squares slope of log(y) against log(x)
    inline double loglog_slope(const std::vector<double> &x, const std::vector<double> &y)
    {
        double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            double lx = std::log(x[i]), ly = std::log(y[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    inline double median(std::vector<double> v)
    {
        std::sort(v.begin(), v.end());
        std::size_t n = v.size();
        return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    }

    // Single pair, every dimension 1
    inline SystemConfig scalar_config(Index users = 1, double power = 1.0, double noise = 1.0)
    {
        return SystemConfig::uniform(users, 1, 1, 1, 1, power, noise);
    }

    inline ChannelSet constant_channels(Index users, std::complex<double> direct, std::complex<double> cross)
    {
        ChannelSet ch(users);
        for (Index k = 0; k < users; ++k)
            for (Index i = 0; i < users; ++i)
                ch.h(k, i) = MatrixXcd::Constant(1, 1, k == i ? direct : cross);
        return ch;
    }
}

#endif
