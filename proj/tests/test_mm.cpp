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

#include "hbf/error.hpp"
#include "hbf/linalg.hpp"
#include "hbf/mm.hpp"
#include "support.hpp"

#include <numbers>

using namespace hbf;
using namespace hbf_test;

namespace
{
    // Exhaustive 1-degree search over both phases, evaluated directly
    double grid_minimum(const MatrixXcd &a, const VectorXcd &lin)
    {
        double best = 1e300;
        for (int p = 0; p < 360; ++p)
            for (int q = 0; q < 360; ++q)
            {
                cd x0 = std::polar(1.0, p * std::numbers::pi / 180.0);
                cd x1 = std::polar(1.0, q * std::numbers::pi / 180.0);
                cd quad = std::conj(x0) * (a(0, 0) * x0 + a(0, 1) * x1) + std::conj(x1) * (a(1, 0) * x0 + a(1, 1) * x1);
                double f = quad.real() - 2.0 * (std::conj(lin(0)) * x0 + std::conj(lin(1)) * x1).real();
                best = std::min(best, f);
            }
        return best;
    }

    UnitModulusQP random_qp(Index n, Rng &rng)
    {
        UnitModulusQP qp;
        qp.a_tilde = random_psd(n, std::max<Index>(1, n / 2), rng);
        qp.a = random_complex(n, 1, rng).col(0);
        return qp;
    }

    VectorXcd random_phases(Index n, Rng &rng)
    {
        VectorXcd x(n);
        for (Index i = 0; i < n; ++i)
            x(i) = std::polar(1.0, rng.angle());
        return x;
    }
}

TEST_CASE("lambda max bound")
{
    MatrixXcd d = MatrixXcd::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    CHECK(lambda_max_bound(d) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(lambda_max_bound(MatrixXcd::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-14));

    Rng rng(1, 0);
    MatrixXcd a = random_psd(5, 5, rng);
    double oracle = Eigen::ComplexEigenSolver<MatrixXcd>(a).eigenvalues().real().maxCoeff();
    CHECK(lambda_max_bound(a) == doctest::Approx(oracle).epsilon(1e-8));

    // iterative path for matrices above the exact-solve limit
    MatrixXcd big = random_psd(40, 10, rng);
    double exact = lambda_max_bound(big);
    double iter = lambda_max_bound(big, 8);
    CHECK(iter >= exact - 1e-9 * big.norm());
    CHECK(iter <= exact * (1.0 + 1e-2));

    MatrixXcd skew = MatrixXcd::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(lambda_max_bound(skew), InvalidInput);
}

TEST_CASE("mm step closed forms")
{
    // linear-only scalar: lands on the phase of a
    UnitModulusQP s;
    s.a_tilde = MatrixXcd::Zero(1, 1);
    s.a = VectorXcd::Constant(1, cd(1.0, 0.0));
    VectorXcd x = mm_step(s, VectorXcd::Constant(1, cd(0.0, 1.0)));
    CHECK(std::abs(x(0) - cd(1.0, 0.0)) < 1e-15);

    // identity quadratic is constant on the constraint set
    Rng rng(2, 0);
    UnitModulusQP id;
    id.a_tilde = MatrixXcd::Identity(4, 4);
    id.a = random_complex(4, 1, rng).col(0);
    VectorXcd y = mm_step(id, random_phases(4, rng));
    for (Index i = 0; i < 4; ++i)
        CHECK(std::abs(y(i) - std::polar(1.0, std::arg(id.a(i)))) < 1e-14);
}

TEST_CASE("mm fixed point matches the phase grid")
{
    UnitModulusQP qp;
    qp.a_tilde.resize(2, 2);
    qp.a_tilde << cd(2, 0), cd(0, 1), cd(0, -1), cd(2, 0);
    qp.a = VectorXcd::Ones(2);
    MmResult r = mm_solve(qp, VectorXcd::Ones(2), 1e-12, 2000);
    CHECK(qp_objective(qp, r.x) <= grid_minimum(qp.a_tilde, qp.a) + 1e-3);
}

TEST_CASE("mm solve special cases")
{
    UnitModulusQP flat;
    flat.a_tilde = MatrixXcd::Identity(3, 3);
    flat.a = VectorXcd::Zero(3);
    VectorXcd x0(3);
    x0 << cd(1, 0), cd(0, 1), std::polar(1.0, 2.0);
    MmResult r = mm_solve(flat, x0);
    CHECK(r.trace.converged);
    CHECK(r.trace.iterations == 1);
    CHECK(r.x == x0);

    UnitModulusQP lin;
    lin.a_tilde = MatrixXcd::Zero(1, 1);
    lin.a = VectorXcd::Constant(1, cd(0.0, -2.0));
    MmResult s = mm_solve(lin, VectorXcd::Ones(1));
    CHECK(std::abs(s.x(0) - cd(0.0, -1.0)) < 1e-14);
    CHECK(qp_objective(lin, s.x) == doctest::Approx(-4.0).epsilon(1e-14));

    CHECK_THROWS_AS(mm_solve(lin, VectorXcd::Constant(1, cd(0.5, 0.0))), InvalidInput);
}

TEST_CASE("mm converges to a fixed point")
{
    Rng rng(3, 0);
    UnitModulusQP qp = random_qp(3, rng);
    VectorXcd x0 = random_phases(3, rng);
    MmResult r = mm_solve(qp, x0, 1e-15, 20000);
    CHECK(qp_objective(qp, r.x) <= qp_objective(qp, x0));
    CHECK((r.x - mm_step(qp, r.x)).norm() <= 1e-6);
}

TEST_CASE("mm trace is monotone and feasible")
{
    Rng rng(4, 0);
    for (int t = 0; t < 50; ++t)
    {
        Index n = 1 + Index(rng.below(32));
        UnitModulusQP qp = random_qp(n, rng);
        VectorXcd x = random_phases(n, rng);
        double lambda = lambda_max_bound(qp.a_tilde);
        for (int it = 0; it < 20; ++it)
        {
            double f = qp_objective(qp, x);
            // tangency of the surrogate
            CHECK(rel_diff(majorizer_value(qp, lambda, x, x), f) < 1e-9);
            VectorXcd next = mm_step(qp, x, lambda);
            CHECK(max_modulus_error(next) < 1e-12);
            CHECK(majorizer_value(qp, lambda, next, x) <= f + 1e-9 * (1.0 + std::abs(f)));
            CHECK(qp_objective(qp, next) <= f + 1e-9 * (1.0 + std::abs(f)));
            x = next;
        }
        MmResult r = mm_solve(qp, random_phases(n, rng));
        const auto &v = r.trace.objective_values;
        for (std::size_t i = 1; i < v.size(); ++i)
            CHECK(v[i] <= v[i - 1] + 1e-9 * (1.0 + std::abs(v[i - 1])));
    }
}

TEST_CASE("caller-supplied eigenvalue bound")
{
    Rng rng(5, 0);
    MatrixXcd b = random_psd(2, 2, rng), c = random_psd(3, 3, rng);
    UnitModulusQP qp;
    qp.a_tilde = kron(b.transpose(), c);
    qp.a = random_complex(6, 1, rng).col(0);
    double lb = lambda_max_bound(b) * lambda_max_bound(c);
    CHECK(lb == doctest::Approx(lambda_max_bound(qp.a_tilde)).epsilon(1e-10));
    qp.lambda_bound = lb;
    VectorXcd x0 = random_phases(6, rng);
    UnitModulusQP plain = qp;
    plain.lambda_bound.reset();
    CHECK((mm_solve(qp, x0).x - mm_solve(plain, x0).x).norm() < 1e-8);
}
