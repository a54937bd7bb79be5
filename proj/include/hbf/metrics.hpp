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

#ifndef HBF_METRICS_HPP
#define HBF_METRICS_HPP

#include "hbf/model.hpp"

#include <vector>

namespace hbf
{
    struct RateReport
    {
        std::vector<double> rates; // bits/s/Hz per pair
        double sum_rate = 0.0;
    };

    struct MseReport
    {
        std::vector<MatrixXcd> e;
        double wmmse_objective = 0.0; // sum_k Tr(W E) - log det W - Ns, natural log
    };

    // Composed F_A F_D and G_A G_D per pair
    std::vector<MatrixXcd> composed_precoders(const HybridState &state);
    std::vector<MatrixXcd> composed_combiners(const HybridState &state);

    // sum_i H_{k,i} F_i F_i^H H_{k,i}^H + sigma2_k I, optionally without i = k
    MatrixXcd receive_covariance(const SystemConfig &config, const ChannelSet &channels, Index k,
                                 const std::vector<MatrixXcd> &precoders, bool include_own = true);

    RateReport sum_rate(const SystemConfig &config, const ChannelSet &channels,
                        const std::vector<MatrixXcd> &precoders,
                        const std::vector<MatrixXcd> &combiners);
    RateReport sum_rate(const SystemConfig &config, const ChannelSet &channels,
                        const HybridState &state);

    // MSE matrix of pair k for combiner G (Nr x Ns) and precoders F_i
    MatrixXcd mse_matrix(const SystemConfig &config, const ChannelSet &channels, Index k,
                         const std::vector<MatrixXcd> &precoders, const MatrixXcd &combiner);

    MseReport mse_matrices(const SystemConfig &config, const ChannelSet &channels,
                           const std::vector<MatrixXcd> &precoders,
                           const std::vector<MatrixXcd> &combiners,
                           const std::vector<MatrixXcd> &weights);
    MseReport mse_matrices(const SystemConfig &config, const ChannelSet &channels,
                           const HybridState &state);

    double wmmse_term(const MatrixXcd &w, const MatrixXcd &e);

    // Signal power over leakage to the other receivers plus sigma2 * Ns
    double slnr(const SystemConfig &config, const ChannelSet &channels, Index k,
                const MatrixXcd &precoder);

    // max_{i != k} ||H_{i,k} F||_F, 0 when K = 1
    double leakage_norm(const ChannelSet &channels, Index k, const MatrixXcd &precoder);

    double tx_power(const HybridState &state, Index k);
}

#endif
