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

#ifndef HBF_APPROX_HPP
#define HBF_APPROX_HPP

#include "hbf/joint.hpp"
#include "hbf/model.hpp"

#include <string>
#include <vector>

namespace hbf
{
    // Fit F_A F_D to a fully-digital precoder
    struct PrecoderFitProblem
    {
        MatrixXcd target;   // Nt x Ns
        MatrixXcd u_target; // first NtRF left singular vectors of target
        double power = 1.0;

        static PrecoderFitProblem make(const MatrixXcd &target, Index rf_chains, double power);
        Index rf_chains() const { return u_target.cols(); }
    };

    // u_target * diag(lambda) * v
    MatrixXcd unconstrained_analog(const PrecoderFitProblem &problem, const VectorXd &lambda,
                                   const MatrixXcd &v);

    // ||u_target diag(lambda) v - fa||_F^2
    double pp_fit_objective(const PrecoderFitProblem &problem, const VectorXd &lambda,
                            const MatrixXcd &v, const MatrixXcd &fa);

    struct PpFitResult
    {
        MatrixXcd fa, fd;
        VectorXd lambda;
        MatrixXcd v;
        std::vector<double> fit_objectives; // after every block step
        int iterations = 0;
        bool converged = false;
    };

    // Cycles phase projection, diagonal and unitary steps, then sets the digital
    // precoder to sqrt(P) X / ||F_A X||_F with X = (F_A^H F_A)^{-1} F_A^H T
    PpFitResult iterative_pp_fit(const PrecoderFitProblem &problem, int max_iter = 500,
                                 double eps = 1e-9);

    struct CombinerFitResult
    {
        MatrixXcd ga, gd;
        std::vector<double> objectives; // after every block step
        int iterations = 0;
        bool converged = false;
        std::vector<std::string> warnings;
    };

    // ||R_y^{1/2} (G_hat - G_A G_D)||_F^2 with G_hat the Wiener combiner
    double combiner_fit_objective(const MatrixXcd &ry, const MatrixXcd &g_hat, const MatrixXcd &ga,
                                  const MatrixXcd &gd);

    CombinerFitResult mm_hybrid_combiner(const SystemConfig &config, const ChannelSet &channels,
                                         const std::vector<MatrixXcd> &precoders, Index k,
                                         const SolverOptions &opts);

    enum class DigitalTarget
    {
        bdzf,
        slnr
    };

    struct ApproxResult
    {
        HybridState state;
        std::vector<PpFitResult> fits;
        std::vector<CombinerFitResult> combiners;
        int iterations = 0; // largest per-pair fit count
        bool converged = false;
        std::vector<std::string> warnings;
    };

    ApproxResult approx_hybrid(const SystemConfig &config, const ChannelSet &channels,
                               DigitalTarget target, const SolverOptions &opts);
    ApproxResult bdzf_hybrid(const SystemConfig &config, const ChannelSet &channels,
                             const SolverOptions &opts);
    ApproxResult slnr_hybrid(const SystemConfig &config, const ChannelSet &channels,
                             const SolverOptions &opts);
}

#endif
