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

#ifndef HBF_MM_HPP
#define HBF_MM_HPP

#include "hbf/model.hpp"

#include <optional>
#include <vector>

namespace hbf
{
    struct IndexBlock
    {
        Index offset = 0;
        Index size = 0;
    };

    // minimize x^H A x - 2 Re{a^H x}  s.t. |x_q| = 1
    struct UnitModulusQP
    {
        MatrixXcd a_tilde;
        VectorXcd a;
        // Informational: where the variable's entries live in the caller's layout
        std::vector<IndexBlock> support;
        // Caller-known upper bound on lambda_max(a_tilde); skips the eigensolve
        std::optional<double> lambda_bound;

        Index size() const { return a.size(); }
    };

    struct MMTrace
    {
        std::vector<double> objective_values; // starts with f(x0)
        int iterations = 0;
        bool converged = false;
    };

    struct MmOptions
    {
        double eps_obj = 1e-4;
        int max_iter = 200;
        Index exact_eig_limit = 4096; // above this, power iteration
    };

    struct MmResult
    {
        VectorXcd x;
        MMTrace trace;
    };

    double qp_objective(const UnitModulusQP &qp, const VectorXcd &x);

    // Upper bound on the largest eigenvalue of a Hermitian matrix
    double lambda_max_bound(const MatrixXcd &a_tilde, Index exact_eig_limit = 4096);

    // Surrogate g(x | x_prev) with Q = lambda I
    double majorizer_value(const UnitModulusQP &qp, double lambda, const VectorXcd &x,
                           const VectorXcd &x_prev);

    VectorXcd mm_step(const UnitModulusQP &qp, const VectorXcd &x_prev);
    VectorXcd mm_step(const UnitModulusQP &qp, const VectorXcd &x_prev, double lambda);

    MmResult mm_solve(const UnitModulusQP &qp, const VectorXcd &x0, double eps_obj = 1e-4,
                      int max_iter = 200);
    MmResult mm_solve(const UnitModulusQP &qp, const VectorXcd &x0, const MmOptions &opts);
}

#endif
