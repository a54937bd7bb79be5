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

#ifndef HBF_DIGITAL_HPP
#define HBF_DIGITAL_HPP

#include "hbf/model.hpp"

#include <vector>

namespace hbf
{
    struct WaterfillResult
    {
        VectorXd allocation;
        double mu = 0.0;    // multiplier, level = 1 / (mu ln 2)
        double level = 0.0;
    };

    // f_s = max(level - noise / gain_s, 0), sum f_s = power. Zero gains never get power.
    WaterfillResult waterfill(const VectorXd &gains, double noise, double power);

    // Orthonormal basis of {x : S x = 0}; S stacks the leakage rows (sum Nr_i x Nt).
    // Throws Infeasible if the basis has fewer than min_dim columns.
    MatrixXcd null_space_basis(const MatrixXcd &stacked, Index nt, Index min_dim = 0);

    // Rows H_{i,k} for all i != k (zero rows when K = 1)
    MatrixXcd leakage_channel(const ChannelSet &channels, Index k);

    MatrixXcd bdzf_precoder(const SystemConfig &config, const ChannelSet &channels, Index k);

    struct Gevd
    {
        MatrixXcd t;  // T^H B T = I
        VectorXd sigma; // T^H A T = diag(sigma), non-increasing
    };
    Gevd gevd(const MatrixXcd &a, const MatrixXcd &b);

    MatrixXcd slnr_precoder(const SystemConfig &config, const ChannelSet &channels, Index k);

    // Wiener combiner R_y^{-1} H_{k,k} F_k
    MatrixXcd mmse_combiner(const SystemConfig &config, const ChannelSet &channels,
                            const std::vector<MatrixXcd> &precoders, Index k);

    struct PowerConstrainedSolution
    {
        MatrixXcd x;
        double beta = 0.0;
    };

    // X = (gram + beta I)^{-1} rhs with the smallest beta >= 0 giving ||X||_F^2 <= power
    PowerConstrainedSolution power_constrained_solve(const MatrixXcd &gram, const MatrixXcd &rhs,
                                                     double power);

    struct FullDigitalPair
    {
        MatrixXcd f, g, w;
    };

    struct FullDigitalState
    {
        std::vector<FullDigitalPair> pairs;
        std::vector<MatrixXcd> precoders() const;
        std::vector<MatrixXcd> combiners() const;
    };

    struct WmmseTrace
    {
        std::vector<double> objectives;       // per outer iteration
        std::vector<double> block_objectives; // after every block update
        int iterations = 0;
        bool converged = false;
    };

    // Top-Ns right singular vectors of H_{k,k} at power P_k / Ns
    std::vector<MatrixXcd> eigen_precoders(const SystemConfig &config, const ChannelSet &channels);

    struct WmmseResult
    {
        FullDigitalState state;
        WmmseTrace trace;
    };

    WmmseResult wmmse_full_digital(const SystemConfig &config, const ChannelSet &channels,
                                   const std::vector<MatrixXcd> &init, double eps_obj = 1e-4,
                                   int max_iter = 200);
    WmmseResult wmmse_full_digital(const SystemConfig &config, const ChannelSet &channels,
                                   double eps_obj = 1e-4, int max_iter = 200);
}

#endif
