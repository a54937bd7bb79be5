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


#include <doctest.h>

#include "hbf/linalg.hpp"
#include "support.hpp"

#include <numbers>

using namespace hbf;
using namespace hbf_test;

TEST_CASE("phase projection")
{
    MatrixXcd m(1, 3);
    m << cd(0.5, 0.5), cd(0.0, 0.0), cd(-2.0, 0.0);
    MatrixXcd p = phase_projection(m);
    CHECK(std::abs(p(0, 0) - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
    CHECK(p(0, 1) == cd(1.0, 0.0));
    CHECK(std::abs(p(0, 2) - cd(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("hermitian eigendecomposition")
{
    Rng rng(1, 2);
    MatrixXcd a = random_hpd(7, rng);
    HermitianEig e = hermitian_eig(a);
    for (Index i = 1; i < 7; ++i)
        CHECK(e.values(i) <= e.values(i - 1));
    CHECK((e.vectors * e.values.asDiagonal() * e.vectors.adjoint() - a).norm() < 1e-10 * a.norm());
    for (Index j = 0; j < 7; ++j)
    {
        // first nonzero entry real positive
        CHECK(std::abs(e.vectors(0, j).imag()) < 1e-12);
        CHECK(e.vectors(0, j).real() > 0.0);
    }
}

TEST_CASE("svd reconstructs and is canonical")
{
    Rng rng(2, 2);
    MatrixXcd m = random_complex(5, 8, rng);
    Svd thin = svd(m);
    CHECK((thin.u * thin.s.asDiagonal() * thin.v.adjoint() - m).norm() < 1e-12 * m.norm());
    Svd full = svd(m, true);
    CHECK(full.v.cols() == 8);
    CHECK((full.v.adjoint() * full.v - MatrixXcd::Identity(8, 8)).norm() < 1e-12);
    Svd again = svd(m);
    CHECK(again.u == thin.u);
}

TEST_CASE("hermitian roots")
{
    Rng rng(3, 3);
    MatrixXcd a = random_hpd(6, rng);
    MatrixXcd r = hermitian_sqrt(a);
    CHECK((r * r - a).norm() < 1e-10 * a.norm());
    bool deficient = true;
    MatrixXcd ri = hermitian_inv_sqrt(a, &deficient);
    CHECK_FALSE(deficient);
    CHECK((ri * a * ri - MatrixXcd::Identity(6, 6)).norm() < 1e-9);

    MatrixXcd low = random_psd(6, 2, rng);
    hermitian_inv_sqrt(low, &deficient);
    CHECK(deficient);
}

TEST_CASE("hpd inverse and log determinant")
{
    Rng rng(4, 4);
    MatrixXcd a = random_hpd(5, rng);
    CHECK((hpd_inverse(a, "test") * a - MatrixXcd::Identity(5, 5)).norm() < 1e-10);
    double ld = std::log(a.determinant().real());
    CHECK(log_det_hpd(a, "test") == doctest::Approx(ld).epsilon(1e-10));

    // condition number beyond 1e12 gets a diagonal loading instead of blowing up
    MatrixXcd s = MatrixXcd::Identity(2, 2);
    s(1, 1) = 1e-15;
    MatrixXcd si = hpd_inverse(s, "test");
    CHECK(std::isfinite(si.norm()));
    CHECK(si(1, 1).real() < 1e15);
}

TEST_CASE("vec and kronecker identity")
{
    Rng rng(5, 5);
    MatrixXcd a = random_complex(3, 4, rng), x = random_complex(4, 2, rng), b = random_complex(2, 5, rng);
    CHECK(unvec(vec(x), 4, 2) == x);
    // vec(A X B) = (B^T kron A) vec(X)
    CHECK((vec(a * x * b) - kron(b.transpose(), a) * vec(x)).norm() < 1e-12 * (a * x * b).norm());
}
