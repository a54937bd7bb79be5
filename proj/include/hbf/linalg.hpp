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

#ifndef HBF_LINALG_HPP
#define HBF_LINALG_HPP

#include "hbf/model.hpp"

namespace hbf
{
    // Entrywise e^{j arg(m)} with arg(0) = 0
    MatrixXcd phase_projection(const MatrixXcd &m);
    VectorXcd phase_projection(const VectorXcd &v);

    MatrixXcd hermitian_part(const MatrixXcd &m);

    // Rotates each column so its first nonzero entry is real positive
    void canonicalize_columns(MatrixXcd &m);

    struct HermitianEig
    {
        VectorXd values;   // non-increasing
        MatrixXcd vectors; // canonical column phases
    };
    HermitianEig hermitian_eig(const MatrixXcd &m);

    struct Svd
    {
        MatrixXcd u;
        VectorXd s; // non-increasing
        MatrixXcd v;
    };
    // Thin SVD unless full is set. Column phases are canonical on v, u follows.
    Svd svd(const MatrixXcd &m, bool full = false);

    // Principal square root and its (pseudo) inverse for Hermitian PSD input.
    // rank_deficient is set when an eigenvalue falls below the rank threshold.
    MatrixXcd hermitian_sqrt(const MatrixXcd &m);
    MatrixXcd hermitian_inv_sqrt(const MatrixXcd &m, bool *rank_deficient = nullptr);

    // Inverse of a Hermitian positive definite matrix. If the condition number
    // exceeds 1e12, 1e-12 * Tr/dim is added to the diagonal first.
    MatrixXcd hpd_inverse(const MatrixXcd &m, const char *context);

    // Natural log-determinant of a Hermitian positive definite matrix
    double log_det_hpd(const MatrixXcd &m, const char *context);

    // Column-major vec and its inverse
    VectorXcd vec(const MatrixXcd &m);
    MatrixXcd unvec(const VectorXcd &v, Index rows, Index cols);

    MatrixXcd kron(const MatrixXcd &a, const MatrixXcd &b);
}

#endif
