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

#include "hbf/mm.hpp"
#include "hbf/error.hpp"
#include "hbf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hbf
{
    namespace
    {
        void check_qp(const UnitModulusQP &qp)
        {
            if (qp.a_tilde.rows() != qp.a_tilde.cols() || qp.a_tilde.rows() != qp.a.size())
                throw InvalidDimension("UnitModulusQP: A must be n x n and a of length n");
        }

        void check_unit_modulus(const VectorXcd &x, const char *what)
        {
            for (Index i = 0; i < x.size(); ++i)
                if (std::abs(std::abs(x(i)) - 1.0) > 1e-8)
                    throw InvalidInput(std::string(what) + ": start point is not unit modulus");
        }

        // Largest eigenvalue estimate plus residual, capped by Gershgorin
        double power_iteration_bound(const MatrixXcd &a)
        {
            Index n = a.rows();
            double gersh_hi = -1e300, gersh_lo = 1e300;
            for (Index i = 0; i < n; ++i)
            {
                double off = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
                gersh_hi = std::max(gersh_hi, a(i, i).real() + off);
                gersh_lo = std::min(gersh_lo, a(i, i).real() - off);
            }
            // Shift so the top of the spectrum dominates in magnitude
            double shift = std::min(gersh_lo, 0.0);
            VectorXcd v = VectorXcd::Constant(n, cd(1.0 / std::sqrt(double(n)), 0.0));
            double rho = 0.0, rho_prev = 0.0;
            for (int it = 0; it < 10000; ++it)
            {
                VectorXcd w = a * v - shift * v;
                double nw = w.norm();
                if (nw == 0.0)
                    break;
                v = w / nw;
                rho = (v.dot(a * v)).real();
                if (it > 0 && std::abs(rho - rho_prev) <= 1e-6 * std::abs(rho))
                    break;
                rho_prev = rho;
            }
            double resid = (a * v - rho * v).norm();
            return std::min(rho + resid, gersh_hi);
        }
    }

    double qp_objective(const UnitModulusQP &qp, const VectorXcd &x)
    {
        return x.dot(qp.a_tilde * x).real() - 2.0 * qp.a.dot(x).real();
    }

    double lambda_max_bound(const MatrixXcd &a, Index exact_eig_limit)
    {
        if (a.rows() != a.cols())
            throw InvalidDimension("lambda_max_bound: matrix must be square");
        if (a.rows() == 0)
            return 0.0;
        double scale = a.norm();
        if ((a - a.adjoint()).norm() > 1e-10 * scale)
            throw InvalidInput("lambda_max_bound: matrix is not Hermitian");
        if (a.rows() <= exact_eig_limit)
        {
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a, Eigen::EigenvaluesOnly);
            return es.eigenvalues()(a.rows() - 1);
        }
        return power_iteration_bound(a);
    }

    double majorizer_value(const UnitModulusQP &qp, double lambda, const VectorXcd &x,
                           const VectorXcd &x_prev)
    {
        // x^H Q x + 2 Re{x^H (A - Q) x0} + x0^H (Q - A) x0 - 2 Re{a^H x}
        VectorXcd d = qp.a_tilde * x_prev - lambda * x_prev;
        return lambda * x.squaredNorm() + 2.0 * x.dot(d).real() - x_prev.dot(d).real() -
               2.0 * qp.a.dot(x).real();
    }

    VectorXcd mm_step(const UnitModulusQP &qp, const VectorXcd &x_prev, double lambda)
    {
        VectorXcd t = qp.a_tilde * x_prev - lambda * x_prev - qp.a;
        VectorXcd x(t.size());
        for (Index i = 0; i < t.size(); ++i)
        {
            double r = std::abs(t(i));
            // arg(0) := 0
            x(i) = r > 0.0 ? -t(i) / r : cd(-1.0, 0.0);
        }
        return x;
    }

    VectorXcd mm_step(const UnitModulusQP &qp, const VectorXcd &x_prev)
    {
        check_qp(qp);
        check_unit_modulus(x_prev, "mm_step");
        return mm_step(qp, x_prev, qp.lambda_bound ? *qp.lambda_bound : lambda_max_bound(qp.a_tilde));
    }

    MmResult mm_solve(const UnitModulusQP &qp, const VectorXcd &x0, const MmOptions &opts)
    {
        check_qp(qp);
        check_unit_modulus(x0, "mm_solve");
        if (!(opts.eps_obj > 0.0) || opts.max_iter < 1)
            throw InvalidInput("mm_solve: eps_obj must be positive and max_iter >= 1");

        double lambda = qp.lambda_bound ? *qp.lambda_bound
                                        : lambda_max_bound(qp.a_tilde, opts.exact_eig_limit);
        MmResult res;
        VectorXcd x = phase_projection(x0);
        double f = qp_objective(qp, x);
        res.trace.objective_values.push_back(f);
        VectorXcd best = x;
        double f_best = f;

        for (int it = 0; it < opts.max_iter; ++it)
        {
            VectorXcd xn = mm_step(qp, x, lambda);
            double fn = qp_objective(qp, xn);
            res.trace.objective_values.push_back(fn);
            res.trace.iterations = it + 1;
            if (fn < f_best)
            {
                f_best = fn;
                best = xn;
            }
            bool done = std::abs(fn - f) <= opts.eps_obj * (1.0 + std::abs(f));
            x = std::move(xn);
            f = fn;
            if (done)
            {
                res.trace.converged = true;
                break;
            }
        }
        res.x = std::move(best);
        return res;
    }

    MmResult mm_solve(const UnitModulusQP &qp, const VectorXcd &x0, double eps_obj, int max_iter)
    {
        MmOptions o;
        o.eps_obj = eps_obj;
        o.max_iter = max_iter;
        return mm_solve(qp, x0, o);
    }
}
