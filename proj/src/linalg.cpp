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

#include "hbf/linalg.hpp"
#include "hbf/error.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <limits>
#include <string>

namespace hbf
{
    namespace
    {
        inline cd unit_phase_of(cd z)
        {
            double r = std::abs(z);
            return r > 0.0 ? z / r : cd(1.0, 0.0);
        }

        // Index of the first entry that is nonzero relative to the column's largest
        Index first_nonzero(const Eigen::Ref<const VectorXcd> &col)
        {
            double peak = col.cwiseAbs().maxCoeff();
            double tol = peak * 1e-10;
            for (Index i = 0; i < col.size(); ++i)
                if (std::abs(col(i)) > tol)
                    return i;
            return -1;
        }

        double rank_tol(const VectorXd &ev, Index n)
        {
            double peak = ev.cwiseAbs().maxCoeff();
            return double(n) * std::numeric_limits<double>::epsilon() * peak;
        }
    }

    MatrixXcd phase_projection(const MatrixXcd &m)
    {
        return m.unaryExpr([](cd z) { return unit_phase_of(z); });
    }

    VectorXcd phase_projection(const VectorXcd &v)
    {
        return v.unaryExpr([](cd z) { return unit_phase_of(z); });
    }

    MatrixXcd hermitian_part(const MatrixXcd &m)
    {
        return 0.5 * (m + m.adjoint());
    }

    void canonicalize_columns(MatrixXcd &m)
    {
        for (Index c = 0; c < m.cols(); ++c)
        {
            Index i = first_nonzero(m.col(c));
            if (i >= 0)
                m.col(c) *= std::conj(unit_phase_of(m(i, c)));
        }
    }

    HermitianEig hermitian_eig(const MatrixXcd &m)
    {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitian_part(m));
        if (es.info() != Eigen::Success)
            throw NumericalError("hermitian_eig: eigensolver did not converge");
        HermitianEig out;
        out.values = es.eigenvalues().reverse();
        out.vectors = es.eigenvectors().rowwise().reverse();
        canonicalize_columns(out.vectors);
        return out;
    }

    Svd svd(const MatrixXcd &m, bool full)
    {
        unsigned opts = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
                             : (Eigen::ComputeThinU | Eigen::ComputeThinV);
        Eigen::BDCSVD<MatrixXcd> dec(m, opts);
        Svd out{dec.matrixU(), dec.singularValues(), dec.matrixV()};
        // Joint rotation keeps u * diag(s) * v^H intact
        Index r = std::min(out.u.cols(), out.v.cols());
        for (Index c = 0; c < out.v.cols(); ++c)
        {
            Index i = first_nonzero(out.v.col(c));
            if (i < 0)
                continue;
            cd ph = std::conj(unit_phase_of(out.v(i, c)));
            out.v.col(c) *= ph;
            if (c < r)
                out.u.col(c) *= ph;
        }
        if (out.u.cols() > r)
            for (Index c = r; c < out.u.cols(); ++c)
            {
                Index i = first_nonzero(out.u.col(c));
                if (i >= 0)
                    out.u.col(c) *= std::conj(unit_phase_of(out.u(i, c)));
            }
        return out;
    }

    MatrixXcd hermitian_sqrt(const MatrixXcd &m)
    {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitian_part(m));
        VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    }

    MatrixXcd hermitian_inv_sqrt(const MatrixXcd &m, bool *rank_deficient)
    {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitian_part(m));
        VectorXd ev = es.eigenvalues();
        double tol = rank_tol(ev, m.rows());
        bool deficient = false;
        VectorXd d(ev.size());
        for (Index i = 0; i < ev.size(); ++i)
        {
            if (ev(i) > tol)
                d(i) = 1.0 / std::sqrt(ev(i));
            else
            {
                d(i) = 0.0;
                deficient = true;
            }
        }
        if (rank_deficient)
            *rank_deficient = deficient;
        return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    }

    MatrixXcd hpd_inverse(const MatrixXcd &m, const char *context)
    {
        Index n = m.rows();
        MatrixXcd h = hermitian_part(m);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
        VectorXd ev = es.eigenvalues();
        double lo = ev(0), hi = ev(n - 1);
        if (!(lo > 0.0) || hi / lo > 1e12)
        {
            double shift = 1e-12 * h.trace().real() / double(n);
            ev.array() += shift;
            lo = ev(0);
            if (!(lo > 0.0))
                throw NumericalError(std::string(context) + ": matrix is singular after regularization");
        }
        return es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
    }

    double log_det_hpd(const MatrixXcd &m, const char *context)
    {
        Index n = m.rows();
        MatrixXcd h = hermitian_part(m);
        Eigen::LLT<MatrixXcd> llt(h);
        if (llt.info() == Eigen::Success)
        {
            double acc = 0.0;
            for (Index i = 0; i < n; ++i)
                acc += std::log(llt.matrixLLT()(i, i).real());
            return 2.0 * acc;
        }
        VectorXd ev = Eigen::SelfAdjointEigenSolver<MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues();
        ev.array() += 1e-12 * h.trace().real() / double(n);
        if (!(ev(0) > 0.0))
            throw NumericalError(std::string(context) + ": matrix is not positive definite");
        return ev.array().log().sum();
    }

    VectorXcd vec(const MatrixXcd &m)
    {
        return Eigen::Map<const VectorXcd>(m.data(), m.size());
    }

    MatrixXcd unvec(const VectorXcd &v, Index rows, Index cols)
    {
        if (v.size() != rows * cols)
            throw InvalidDimension("unvec: size mismatch");
        return Eigen::Map<const MatrixXcd>(v.data(), rows, cols);
    }

    MatrixXcd kron(const MatrixXcd &a, const MatrixXcd &b)
    {
        return Eigen::kroneckerProduct(a, b).eval();
    }
}
