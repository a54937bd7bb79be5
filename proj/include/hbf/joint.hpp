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

#ifndef HBF_JOINT_HPP
#define HBF_JOINT_HPP

#include "hbf/mm.hpp"
#include "hbf/model.hpp"

#include <string>
#include <vector>

namespace hbf
{
    enum class InitMode
    {
        random_phase,
        two_stage_pp
    };

    struct SolverOptions
    {
        double eps_obj = 1e-5;
        int max_outer = 1000;
        int max_inner = 50;
        InitMode init = InitMode::two_stage_pp;
        Index exact_eig_limit = 4096;
        // Iterative phase-projection fits of the separate designs
        int fit_max_iter = 500;
        double fit_eps = 1e-9;

        void validate() const;
    };

    // Working variables of the alternating WMMSE solver for one pair.
    //
    // The transmitted signal is modelled as fa * diag(tx_scale) * fd_tilde. For the
    // fully-connected solver tx_scale = 1/sqrt(Nt) (large-array surrogate for the
    // semi-unitary analog map); for block-diagonal analog matrices it is
    // 1/sqrt(block size), which is exact.
    struct AltOptPair
    {
        MatrixXcd fa, fd_tilde, ga, gd, w;
        VectorXd tx_scale;
        std::vector<Index> tx_blocks; // empty: fully connected
        std::vector<Index> rx_blocks;
    };

    struct AltOptState
    {
        std::vector<AltOptPair> pairs;
        Index users() const { return Index(pairs.size()); }
    };

    struct AltOptTrace
    {
        std::vector<double> outer_objectives;
        std::vector<double> block_objectives; // after every block update
        std::vector<MMTrace> precoder_mm;     // pair-major within each outer iteration
        std::vector<MMTrace> combiner_mm;
        int iterations = 0;
        bool converged = false;
        std::vector<std::string> warnings;
    };

    struct HybridResult
    {
        HybridState state;
        AltOptTrace trace;
    };

    // fa * diag(tx_scale) * fd_tilde per pair
    std::vector<MatrixXcd> effective_precoders(const AltOptState &state);

    // sum_k Tr(W E) - log det W - Ns evaluated with the effective precoders
    double alt_opt_objective(const AltOptState &state, const ChannelSet &channels,
                             const SystemConfig &config);

    void update_digital_combiner(AltOptState &state, const ChannelSet &channels,
                                 const SystemConfig &config);
    void update_weights(AltOptState &state, const ChannelSet &channels, const SystemConfig &config);
    void update_digital_precoder(AltOptState &state, const ChannelSet &channels,
                                 const SystemConfig &config);
    std::vector<MMTrace> update_analog_precoder(AltOptState &state, const ChannelSet &channels,
                                                const SystemConfig &config, const SolverOptions &opts);
    std::vector<MMTrace> update_analog_combiner(AltOptState &state, const ChannelSet &channels,
                                                const SystemConfig &config, const SolverOptions &opts);

    // Quadratic forms over vec(F_A) and vec(G_A) for pair k
    UnitModulusQP assemble_precoder_qp(const AltOptState &state, const ChannelSet &channels,
                                       const SystemConfig &config, Index k);
    UnitModulusQP assemble_combiner_qp(const AltOptState &state, const ChannelSet &channels,
                                       const SystemConfig &config, Index k);

    // Analog from phases of the dominant singular vectors of H_{k,k}, or random phases
    AltOptState init_alt_opt_state(const SystemConfig &config, const ChannelSet &channels,
                                   InitMode mode, Rng *rng);

    // Digital precoder from the dominant right singular vectors of the effective
    // channel ga^H H_{k,k} fa diag(tx_scale), at full power
    void reset_digital_precoder(AltOptState &state, const ChannelSet &channels,
                                const SystemConfig &config);

    // Runs the block loop in place. update_analog = false gives the two-stage design.
    AltOptTrace run_alternating(AltOptState &state, const ChannelSet &channels,
                                const SystemConfig &config, const SolverOptions &opts,
                                bool update_analog);

    // F_D = (F_A^H F_A)^{-1/2} fd_tilde, so ||F_A F_D||_F = ||fd_tilde||_F
    HybridState recover_hybrid_state(const AltOptState &state, std::vector<std::string> *warnings);

    HybridResult mm_alt_opt(const SystemConfig &config, const ChannelSet &channels,
                            const SolverOptions &opts, Rng &rng);
    HybridResult two_stage_pp(const SystemConfig &config, const ChannelSet &channels,
                              const SolverOptions &opts);
}

#endif
