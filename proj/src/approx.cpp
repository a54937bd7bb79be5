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

#include "hbf/approx.hpp"
#include "hbf/digital.hpp"
#include "hbf/error.hpp"
#include "hbf/linalg.hpp"
#include "hbf/metrics.hpp"
#include "hbf/mm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hbf
{
    PrecoderFitProblem PrecoderFitProblem::make(const MatrixXcd &target, Index rf_chains, double power)
    {
        if (target.norm() == 0.0)
            throw InvalidInput("PrecoderFitProblem: target precoder is zero");
        if (rf_chains < target.cols() || rf_chains > target.rows())
            throw InvalidDimension("PrecoderFitProblem: need Ns <= NtRF <= Nt");
        if (target.squaredNorm() > power * (1.0 + 1e-9))
            throw InvalidInput("PrecoderFitProblem: target exceeds the power budget");
        PrecoderFitProblem p;
        p.target = target;
        p.u_target = svd(target, true).u.leftCols(rf_chains);
        p.power = power;
        return p;
    }

    MatrixXcd unconstrained_analog(const PrecoderFitProblem &problem, const VectorXd &lambda,
                                   const MatrixXcd &v)
    {
        return problem.u_target * lambda.asDiagonal() * v;
    }

    double pp_fit_objective(const PrecoderFitProblem &problem, const VectorXd &lambda,
                            const MatrixXcd &v, const MatrixXcd &fa)
    {
        return (unconstrained_analog(problem, lambda, v) - fa).squaredNorm();
    }

    PpFitResult iterative_pp_fit(const PrecoderFitProblem &problem, int max_iter, double eps)
    {
        if (max_iter < 1 || !(eps > 0.0))
            throw InvalidInput("iterative_pp_fit: max_iter >= 1 and eps > 0 required");
        Index rf = problem.rf_chains();
        const MatrixXcd &u = problem.u_target;

        PpFitResult res;
        res.lambda = VectorXd::Ones(rf);
        res.v = MatrixXcd::Identity(rf, rf);
        double prev = 0.0;
        for (int it = 0; it < max_iter; ++it)
        {
            res.fa = phase_projection(unconstrained_analog(problem, res.lambda, res.v));
            res.fit_objectives.push_back(pp_fit_objective(problem, res.lambda, res.v, res.fa));

            MatrixXcd c = res.v * res.fa.adjoint() * u;
            for (Index i = 0; i < rf; ++i)
                res.lambda(i) = c(i, i).real();
            res.fit_objectives.push_back(pp_fit_objective(problem, res.lambda, res.v, res.fa));

            // Closest unitary to (lambda u^H fa): polar factor from the SVD of its adjoint
            Svd d = svd(res.fa.adjoint() * u * res.lambda.asDiagonal());
            res.v = d.v * d.u.adjoint();
            double obj = pp_fit_objective(problem, res.lambda, res.v, res.fa);
            res.fit_objectives.push_back(obj);

            res.iterations = it + 1;
            if (it > 0 && std::abs(obj - prev) <= eps * (1.0 + std::abs(prev)))
            {
                res.converged = true;
                break;
            }
            prev = obj;
        }

        // Least-squares digital part; equals F_A^H T up to scale when F_A^H F_A is a multiple of I
        MatrixXcd x = hpd_inverse(res.fa.adjoint() * res.fa, "iterative_pp_fit") * (res.fa.adjoint() * problem.target);
        double denom = (res.fa * x).norm();
        if (!(denom > 0.0))
            throw NumericalError("iterative_pp_fit: analog precoder is orthogonal to the target");
        res.fd = std::sqrt(problem.power) * x / denom;
        return res;
    }

    double combiner_fit_objective(const MatrixXcd &ry, const MatrixXcd &g_hat, const MatrixXcd &ga,
                                  const MatrixXcd &gd)
    {
        MatrixXcd d = g_hat - ga * gd;
        return (d.adjoint() * ry * d).trace().real();
    }

    CombinerFitResult mm_hybrid_combiner(const SystemConfig &config, const ChannelSet &channels,
                                         const std::vector<MatrixXcd> &precoders, Index k,
                                         const SolverOptions &opts)
    {
        opts.validate();
        const PairConfig &pc = config[k];
        MatrixXcd ry = receive_covariance(config, channels, k, precoders, true);
        MatrixXcd g_hat = ry.llt().solve(channels.h(k, k) * precoders[std::size_t(k)]);

        CombinerFitResult res;
        res.ga = phase_projection(MatrixXcd(svd(channels.h(k, k), true).u.leftCols(pc.nr_rf)));

        MmOptions mo;
        mo.eps_obj = opts.eps_obj;
        mo.max_iter = opts.max_inner;
        mo.exact_eig_limit = opts.exact_eig_limit;

        auto digital_step = [&]() {
            MatrixXcd gram = res.ga.adjoint() * ry * res.ga;
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitian_part(gram), Eigen::EigenvaluesOnly);
            VectorXd ev = es.eigenvalues();
            if (!(ev(0) > 0.0) || ev(ev.size() - 1) / ev(0) > 1e12)
                res.warnings.push_back("pair " + std::to_string(k) +
                                       ": analog combiner Gram is ill-conditioned, regularized");
            res.gd = hpd_inverse(gram, "hybrid combiner") * (res.ga.adjoint() * ry * g_hat);
            res.objectives.push_back(combiner_fit_objective(ry, g_hat, res.ga, res.gd));
        };

        double prev = 0.0;
        for (int it = 0; it < opts.max_outer; ++it)
        {
            digital_step();

            MatrixXcd b = hermitian_part(res.gd * res.gd.adjoint());
            UnitModulusQP qp;
            qp.a_tilde = kron(b.transpose(), ry);
            qp.a = vec(ry * g_hat * res.gd.adjoint());
            Eigen::SelfAdjointEigenSolver<MatrixXcd> eb(b, Eigen::EigenvaluesOnly);
            Eigen::SelfAdjointEigenSolver<MatrixXcd> er(ry, Eigen::EigenvaluesOnly);
            qp.lambda_bound = std::max(eb.eigenvalues().maxCoeff(), 0.0) * er.eigenvalues().maxCoeff();
            MmResult mm = mm_solve(qp, vec(res.ga), mo);
            res.ga = unvec(mm.x, pc.nr, pc.nr_rf);
            double obj = combiner_fit_objective(ry, g_hat, res.ga, res.gd);
            res.objectives.push_back(obj);

            res.iterations = it + 1;
            if (it > 0 && std::abs(obj - prev) <= opts.eps_obj * (1.0 + std::abs(prev)))
            {
                res.converged = true;
                break;
            }
            prev = obj;
        }
        // Match the digital part to the final analog combiner
        digital_step();
        return res;
    }

    ApproxResult approx_hybrid(const SystemConfig &config, const ChannelSet &channels,
                               DigitalTarget target, const SolverOptions &opts)
    {
        config.validate();
        channels.validate(config);
        opts.validate();
        Index K = config.users();

        ApproxResult res;
        res.converged = true;
        std::vector<MatrixXcd> precoders;
        for (Index k = 0; k < K; ++k)
        {
            const PairConfig &pc = config[k];
            MatrixXcd f;
            if (target == DigitalTarget::bdzf)
            {
                try
                {
                    f = bdzf_precoder(config, channels, k);
                }
                catch (const Infeasible &e)
                {
                    throw Infeasible(std::string("hybrid BD-ZF: ") + e.what() +
                                     "; the SLNR-based design has no such dimension condition");
                }
            }
            else
                f = slnr_precoder(config, channels, k);

            PpFitResult fit = iterative_pp_fit(PrecoderFitProblem::make(f, pc.nt_rf, pc.power),
                                               opts.fit_max_iter, opts.fit_eps);
            res.iterations = std::max(res.iterations, fit.iterations);
            res.converged = res.converged && fit.converged;
            precoders.push_back(fit.fa * fit.fd);
            res.fits.push_back(std::move(fit));
        }

        for (Index k = 0; k < K; ++k)
        {
            CombinerFitResult cf = mm_hybrid_combiner(config, channels, precoders, k, opts);
            res.warnings.insert(res.warnings.end(), cf.warnings.begin(), cf.warnings.end());
            HybridPair p;
            p.fa = res.fits[std::size_t(k)].fa;
            p.fd = res.fits[std::size_t(k)].fd;
            p.ga = cf.ga;
            p.gd = cf.gd;
            p.w = hermitian_part(hpd_inverse(mse_matrix(config, channels, k, precoders, cf.ga * cf.gd),
                                             "hybrid weight"));
            res.state.pairs.push_back(std::move(p));
            res.combiners.push_back(std::move(cf));
        }
        return res;
    }

    ApproxResult bdzf_hybrid(const SystemConfig &config, const ChannelSet &channels,
                             const SolverOptions &opts)
    {
        return approx_hybrid(config, channels, DigitalTarget::bdzf, opts);
    }

    ApproxResult slnr_hybrid(const SystemConfig &config, const ChannelSet &channels,
                             const SolverOptions &opts)
    {
        return approx_hybrid(config, channels, DigitalTarget::slnr, opts);
    }
}
