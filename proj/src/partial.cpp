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

#include "hbf/partial.hpp"
#include "hbf/error.hpp"
#include "hbf/linalg.hpp"
#include "hbf/metrics.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace hbf
{
    namespace
    {
        void check_blocks(const std::vector<Index> &blocks, Index antennas, Index rf, const char *what)
        {
            if (Index(blocks.size()) != rf)
                throw InvalidDimension(std::string(what) + ": need one block per RF chain");
            Index total = 0;
            for (Index b : blocks)
            {
                if (b < 1)
                    throw InvalidDimension(std::string(what) + ": block sizes must be >= 1");
                total += b;
            }
            if (total != antennas)
                throw InvalidDimension(std::string(what) + ": block sizes must sum to the antenna count");
        }

        // Sub-blocks of kron(B^T, C) on the block-diagonal support
        MatrixXcd reduced_kron(const MatrixXcd &b, const MatrixXcd &c, const std::vector<IndexBlock> &off)
        {
            Index n = c.rows();
            MatrixXcd out(n, n);
            for (std::size_t l = 0; l < off.size(); ++l)
                for (std::size_t q = 0; q < off.size(); ++q)
                    out.block(off[l].offset, off[q].offset, off[l].size, off[q].size) =
                        b(Index(q), Index(l)) * c.block(off[l].offset, off[q].offset, off[l].size, off[q].size);
            return hermitian_part(out);
        }

        // Entries (o_l + j, l) of an antennas x rf matrix, stacked
        VectorXcd reduced_linear(const MatrixXcd &g, const std::vector<IndexBlock> &off)
        {
            VectorXcd out(g.rows());
            for (std::size_t l = 0; l < off.size(); ++l)
                out.segment(off[l].offset, off[l].size) = g.col(Index(l)).segment(off[l].offset, off[l].size);
            return out;
        }
    }

    std::vector<Index> split_blocks(Index antennas, Index rf)
    {
        if (rf < 1 || rf > antennas)
            throw InvalidInput("split_blocks: need 1 <= RF chains <= antennas");
        Index base = antennas / rf;
        std::vector<Index> out(std::size_t(rf), base);
        out.back() = antennas - (rf - 1) * base;
        return out;
    }

    PartialLayout make_layout(const SystemConfig &config, Index k)
    {
        const PairConfig &pc = config[k];
        return {split_blocks(pc.nt, pc.nt_rf), split_blocks(pc.nr, pc.nr_rf)};
    }

    std::vector<IndexBlock> block_offsets(const std::vector<Index> &blocks)
    {
        std::vector<IndexBlock> out;
        Index at = 0;
        for (Index b : blocks)
        {
            out.push_back({at, b});
            at += b;
        }
        return out;
    }

    VectorXcd gather_support(const MatrixXcd &m, const std::vector<Index> &blocks)
    {
        std::vector<IndexBlock> off = block_offsets(blocks);
        if (m.cols() != Index(blocks.size()) || m.rows() != off.back().offset + off.back().size)
            throw InvalidDimension("gather_support: matrix does not match the block layout");
        return reduced_linear(m, off);
    }

    MatrixXcd scatter_support(const VectorXcd &v, const std::vector<Index> &blocks)
    {
        std::vector<IndexBlock> off = block_offsets(blocks);
        Index n = off.back().offset + off.back().size;
        if (v.size() != n)
            throw InvalidDimension("scatter_support: vector does not match the block layout");
        MatrixXcd m = MatrixXcd::Zero(n, Index(blocks.size()));
        for (std::size_t l = 0; l < off.size(); ++l)
            m.col(Index(l)).segment(off[l].offset, off[l].size) = v.segment(off[l].offset, off[l].size);
        return m;
    }

    UnitModulusQP assemble_partial_precoder_qp(const AltOptState &state, const ChannelSet &channels,
                                               const SystemConfig &config, Index k,
                                               const std::vector<Index> &blocks)
    {
        const PairConfig &pc = config[k];
        check_blocks(blocks, pc.nt, pc.nt_rf, "assemble_partial_precoder_qp");
        const AltOptPair &pk = state.pairs[std::size_t(k)];
        MatrixXcd d = pk.tx_scale.asDiagonal() * pk.fd_tilde;
        MatrixXcd b = d * d.adjoint();
        MatrixXcd c = MatrixXcd::Zero(pc.nt, pc.nt);
        for (Index i = 0; i < config.users(); ++i)
        {
            const AltOptPair &pi = state.pairs[std::size_t(i)];
            MatrixXcd m = channels.h(i, k).adjoint() * (pi.ga * pi.gd);
            c.noalias() += m * pi.w * m.adjoint();
        }
        MatrixXcd mkk = channels.h(k, k).adjoint() * (pk.ga * pk.gd);

        std::vector<IndexBlock> off = block_offsets(blocks);
        UnitModulusQP qp;
        qp.a_tilde = reduced_kron(b, hermitian_part(c), off);
        qp.a = reduced_linear(mkk * pk.w * d.adjoint(), off);
        qp.support = off;
        return qp;
    }

    UnitModulusQP assemble_partial_combiner_qp(const AltOptState &state, const ChannelSet &channels,
                                               const SystemConfig &config, Index k,
                                               const std::vector<Index> &blocks)
    {
        const PairConfig &pc = config[k];
        check_blocks(blocks, pc.nr, pc.nr_rf, "assemble_partial_combiner_qp");
        const AltOptPair &pk = state.pairs[std::size_t(k)];
        std::vector<MatrixXcd> f = effective_precoders(state);
        MatrixXcd r = receive_covariance(config, channels, k, f, true);
        MatrixXcd b = pk.gd * pk.w * pk.gd.adjoint();

        std::vector<IndexBlock> off = block_offsets(blocks);
        UnitModulusQP qp;
        qp.a_tilde = reduced_kron(b, r, off);
        qp.a = reduced_linear(channels.h(k, k) * f[std::size_t(k)] * pk.w * pk.gd.adjoint(), off);
        qp.support = off;
        return qp;
    }

    HybridResult partial_mm_alt_opt(const SystemConfig &config, const ChannelSet &channels,
                                    const SolverOptions &opts, bool tx_only, Rng &rng)
    {
        opts.validate();
        AltOptState state = init_alt_opt_state(config, channels, opts.init, &rng);
        for (Index k = 0; k < config.users(); ++k)
        {
            AltOptPair &p = state.pairs[std::size_t(k)];
            PartialLayout layout = make_layout(config, k);
            p.tx_blocks = layout.tx_blocks;
            p.fa = scatter_support(gather_support(p.fa, p.tx_blocks), p.tx_blocks);
            for (std::size_t l = 0; l < p.tx_blocks.size(); ++l)
                p.tx_scale(Index(l)) = 1.0 / std::sqrt(double(p.tx_blocks[l]));
            if (!tx_only)
            {
                p.rx_blocks = layout.rx_blocks;
                p.ga = scatter_support(gather_support(p.ga, p.rx_blocks), p.rx_blocks);
            }
        }
        reset_digital_precoder(state, channels, config);

        HybridResult res;
        res.trace = run_alternating(state, channels, config, opts, true);
        res.state = recover_hybrid_state(state, &res.trace.warnings);
        return res;
    }
}
