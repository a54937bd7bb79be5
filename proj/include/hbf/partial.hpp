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

#ifndef HBF_PARTIAL_HPP
#define HBF_PARTIAL_HPP

#include "hbf/joint.hpp"

#include <vector>

namespace hbf
{
    struct PartialLayout
    {
        std::vector<Index> tx_blocks; // antennas per transmit RF chain
        std::vector<Index> rx_blocks; // antennas per receive RF chain
    };

    // First rf-1 blocks get floor(antennas / rf), the last takes the rest
    std::vector<Index> split_blocks(Index antennas, Index rf);
    PartialLayout make_layout(const SystemConfig &config, Index k);

    // Cumulative offsets of the blocks
    std::vector<IndexBlock> block_offsets(const std::vector<Index> &blocks);

    // Stacked support entries [p_1; p_2; ...] of a block-diagonal matrix, and back
    VectorXcd gather_support(const MatrixXcd &m, const std::vector<Index> &blocks);
    MatrixXcd scatter_support(const VectorXcd &v, const std::vector<Index> &blocks);

    // Reduced QP over the Nt support entries of a block-diagonal F_A
    UnitModulusQP assemble_partial_precoder_qp(const AltOptState &state, const ChannelSet &channels,
                                               const SystemConfig &config, Index k,
                                               const std::vector<Index> &blocks);
    // Reduced QP over the Nr support entries of a block-diagonal G_A
    UnitModulusQP assemble_partial_combiner_qp(const AltOptState &state, const ChannelSet &channels,
                                               const SystemConfig &config, Index k,
                                               const std::vector<Index> &blocks);

    HybridResult partial_mm_alt_opt(const SystemConfig &config, const ChannelSet &channels,
                                    const SolverOptions &opts, bool tx_only, Rng &rng);
}

#endif
