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

#include "hbf/digital.hpp"
#include "hbf/error.hpp"
#include "hbf/linalg.hpp"
#include "hbf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hbf
{
    WaterfillResult waterfill(const VectorXd &gains, double noise, double power)
    {
        if (gains.size() == 0)
            throw InvalidInput("waterfill: empty gain vector");
        if (!(noise > 0.0) || !(power > 0.0))
            throw InvalidInput("waterfill: noise and power must be positive");
        double worst = 0.0;
        bool any = false;
        for (Index s = 0; s < gains.size(); ++s)
        {
            if (!(gains(s) >= 0.0) || !std::isfinite(gains(s)))
                throw InvalidInput("waterfill: gains must be finite and non-negative");
            if (gains(s) > 0.0)
            {
                any = true;
                worst = std::max(worst, noise / gains(s));
            }
        }
        if (!any)
            throw InvalidInput("waterfill: all gains are zero");

        auto filled = [&](double level) {
            double acc = 0.0;
            for (Index s = 0; s < gains.size(); ++s)
                if (gains(s) > 0.0)
                    acc += std::max(level - noise / gains(s), 0.0);
            return acc;
        };

        double lo = 0.0, hi = power + worst;
        for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it)
        {
            double mid = 0.5 * (lo + hi);
            (filled(mid) < power ? lo : hi) = mid;
        }
        double level = 0.5 * (lo + hi);

        WaterfillResult out;
        out.level = level;
        out.mu = 1.0 / (level * std::numbers::ln2);
        out.allocation = VectorXd::Zero(gains.size());
        for (Index s = 0; s < gains.size(); ++s)
            if (gains(s) > 0.0)
                out.allocation(s) = std::max(level - noise / gains(s), 0.0);
        return out;
    }

    MatrixXcd null_space_basis(const MatrixXcd &stacked, Index nt, Index min_dim)
    {
        if (stacked.cols() != nt)
            throw InvalidDimension("null_space_basis: leakage channel must have Nt columns");
        MatrixXcd basis;
        if (stacked.rows() == 0 || stacked.norm() == 0.0)
            basis = MatrixXcd::Identity(nt, nt);
        else
        {
            Svd d = svd(stacked, true);
            double tol = double(std::max(stacked.rows(), stacked.cols())) *
                         std::numeric_limits<double>::epsilon() * d.s(0);
            Index rank = 0;
            for (Index i = 0; i < d.s.size(); ++i)
                rank += d.s(i) > tol ? 1 : 0;
            basis = d.v.rightCols(nt - rank);
            canonicalize_columns(basis);
        }
        if (basis.cols() < min_dim || basis.cols() == 0)
            throw Infeasible("null_space_basis: complement of the leakage channel has dimension " +
                             std::to_string(basis.cols()) + " but " + std::to_string(min_dim) +
                             " streams are required (needs Nt > rank of stacked cross channels)");
        return basis;
    }

    MatrixXcd leakage_channel(const ChannelSet &channels, Index k)
    {
        Index K = channels.users();
        Index nt = channels.h(k, k).cols();
        Index rows = 0;
        for (Index i = 0; i < K; ++i)
            if (i != k)
                rows += channels.h(i, k).rows();
        MatrixXcd s(rows, nt);
        Index r = 0;
        for (Index i = 0; i < K; ++i)
            if (i != k)
            {
                s.middleRows(r, channels.h(i, k).rows()) = channels.h(i, k);
                r += channels.h(i, k).rows();
            }
        return s;
    }

    MatrixXcd bdzf_precoder(const SystemConfig &config, const ChannelSet &channels, Index k)
    {
        const PairConfig &pc = config[k];
        MatrixXcd basis = null_space_basis(leakage_channel(channels, k), pc.nt, pc.ns);
        Svd d = svd(channels.h(k, k) * basis);
        if (d.s.size() < pc.ns)
            throw Infeasible("bdzf_precoder: effective channel of pair " + std::to_string(k) +
                             " supports fewer than Ns streams");
        VectorXd gains = d.s.head(pc.ns).array().square();
        WaterfillResult wf = waterfill(gains, pc.noise, pc.power);
        return basis * d.v.leftCols(pc.ns) * wf.allocation.cwiseSqrt().asDiagonal();
    }

    Gevd gevd(const MatrixXcd &a, const MatrixXcd &b)
    {
        if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
            throw InvalidDimension("gevd: A and B must be square and of equal size");
        Eigen::LLT<MatrixXcd> llt(hermitian_part(b));
        if (llt.info() != Eigen::Success)
            throw InvalidInput("gevd: B is not positive definite");
        MatrixXcd l = llt.matrixL();
        // C = L^{-1} A L^{-H}
        MatrixXcd y = l.triangularView<Eigen::Lower>().solve(hermitian_part(a));
        MatrixXcd c = l.triangularView<Eigen::Lower>().solve(y.adjoint().eval());
        HermitianEig eig = hermitian_eig(c);
        Gevd out;
        out.sigma = eig.values;
        out.t = l.adjoint().triangularView<Eigen::Upper>().solve(eig.vectors);
        return out;
    }

    MatrixXcd slnr_precoder(const SystemConfig &config, const ChannelSet &channels, Index k)
    {
        const PairConfig &pc = config[k];
        const MatrixXcd &hkk = channels.h(k, k);
        MatrixXcd a = hkk.adjoint() * hkk;
        MatrixXcd b = (double(pc.nr) * pc.noise / pc.power) * MatrixXcd::Identity(pc.nt, pc.nt);
        for (Index i = 0; i < config.users(); ++i)
            if (i != k)
                b.noalias() += channels.h(i, k).adjoint() * channels.h(i, k);
        Gevd g = gevd(a, b);
        MatrixXcd t1 = g.t.leftCols(pc.ns);
        return std::sqrt(pc.power / t1.squaredNorm()) * t1;
    }

    MatrixXcd mmse_combiner(const SystemConfig &config, const ChannelSet &channels,
                            const std::vector<MatrixXcd> &precoders, Index k)
    {
        MatrixXcd r = receive_covariance(config, channels, k, precoders, true);
        return r.llt().solve(channels.h(k, k) * precoders[std::size_t(k)]);
    }

    PowerConstrainedSolution power_constrained_solve(const MatrixXcd &gram, const MatrixXcd &rhs,
                                                     double power)
    {
        if (gram.rows() != gram.cols() || gram.rows() != rhs.rows())
            throw InvalidDimension("power_constrained_solve: size mismatch");
        PowerConstrainedSolution out;
        if (rhs.norm() == 0.0)
        {
            out.x = MatrixXcd::Zero(rhs.rows(), rhs.cols());
            return out;
        }
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitian_part(gram));
        VectorXd lam = es.eigenvalues().cwiseMax(0.0);
        MatrixXcd q = es.eigenvectors().adjoint() * rhs;
        VectorXd qq = q.rowwise().squaredNorm();
        Index n = lam.size();
        double tol = double(n) * std::numeric_limits<double>::epsilon() * lam.maxCoeff();
        double qq_tol = 1e-24 * qq.sum();

        auto solve_with = [&](double beta) {
            VectorXd d(n);
            for (Index m = 0; m < n; ++m)
            {
                double den = lam(m) + beta;
                d(m) = (beta == 0.0 && lam(m) <= tol) ? 0.0 : 1.0 / den;
            }
            return MatrixXcd(es.eigenvectors() * (d.asDiagonal() * q));
        };
        auto power_at = [&](double beta) {
            double acc = 0.0;
            for (Index m = 0; m < n; ++m)
            {
                double den = lam(m) + beta;
                if (beta == 0.0 && lam(m) <= tol)
                {
                    if (qq(m) > qq_tol)
                        return std::numeric_limits<double>::infinity();
                    continue;
                }
                acc += qq(m) / (den * den);
            }
            return acc;
        };

        if (power_at(0.0) <= power)
        {
            out.x = solve_with(0.0);
            return out;
        }
        double lo = 0.0, hi = std::sqrt(qq.sum() / power);
        while (power_at(hi) > power) // guards rounding at the bracket edge
            hi *= 2.0;
        for (int it = 0; it < 400 && hi - lo > 1e-13 * hi; ++it)
        {
            double mid = 0.5 * (lo + hi);
            (power_at(mid) > power ? lo : hi) = mid;
        }
        out.beta = hi;
        out.x = solve_with(hi);
        return out;
    }

    std::vector<MatrixXcd> FullDigitalState::precoders() const
    {
        std::vector<MatrixXcd> out;
        for (const auto &p : pairs)
            out.push_back(p.f);
        return out;
    }

    std::vector<MatrixXcd> FullDigitalState::combiners() const
    {
        std::vector<MatrixXcd> out;
        for (const auto &p : pairs)
            out.push_back(p.g);
        return out;
    }

    std::vector<MatrixXcd> eigen_precoders(const SystemConfig &config, const ChannelSet &channels)
    {
        std::vector<MatrixXcd> out;
        for (Index k = 0; k < config.users(); ++k)
        {
            const PairConfig &pc = config[k];
            Svd d = svd(channels.h(k, k));
            out.push_back(std::sqrt(pc.power / double(pc.ns)) * d.v.leftCols(pc.ns));
        }
        return out;
    }

    WmmseResult wmmse_full_digital(const SystemConfig &config, const ChannelSet &channels,
                                   const std::vector<MatrixXcd> &init, double eps_obj, int max_iter)
    {
        config.validate();
        channels.validate(config);
        Index K = config.users();
        if (Index(init.size()) != K)
            throw InvalidDimension("wmmse_full_digital: one initial precoder per pair is required");
        if (!(eps_obj > 0.0) || max_iter < 1)
            throw InvalidInput("wmmse_full_digital: eps_obj must be positive and max_iter >= 1");

        std::vector<MatrixXcd> f = init;
        std::vector<MatrixXcd> g(static_cast<std::size_t>(K)), w(g), e(g);
        for (Index k = 0; k < K; ++k)
        {
            const PairConfig &pc = config[k];
            MatrixXcd &fk = f[std::size_t(k)];
            if (fk.rows() != pc.nt || fk.cols() != pc.ns)
                throw InvalidDimension("wmmse_full_digital: initial precoder has wrong shape");
            double p = fk.squaredNorm();
            if (p > pc.power)
                fk *= std::sqrt(pc.power / p);
        }

        auto objective = [&]() {
            double acc = 0.0;
            for (Index k = 0; k < K; ++k)
                acc += wmmse_term(w[std::size_t(k)],
                                  mse_matrix(config, channels, k, f, g[std::size_t(k)]));
            return acc;
        };

        WmmseResult res;
        double prev = 0.0;
        for (int it = 0; it < max_iter; ++it)
        {
            for (Index k = 0; k < K; ++k)
                g[std::size_t(k)] = mmse_combiner(config, channels, f, k);
            for (Index k = 0; k < K; ++k)
            {
                e[std::size_t(k)] = mse_matrix(config, channels, k, f, g[std::size_t(k)]);
                w[std::size_t(k)] = hermitian_part(hpd_inverse(e[std::size_t(k)], "wmmse weight"));
            }
            res.trace.block_objectives.push_back(objective());
            for (Index k = 0; k < K; ++k)
            {
                const PairConfig &pc = config[k];
                MatrixXcd gram = MatrixXcd::Zero(pc.nt, pc.nt);
                for (Index i = 0; i < K; ++i)
                {
                    MatrixXcd l = g[std::size_t(i)].adjoint() * channels.h(i, k);
                    gram.noalias() += l.adjoint() * w[std::size_t(i)] * l;
                }
                MatrixXcd rhs = channels.h(k, k).adjoint() * g[std::size_t(k)] * w[std::size_t(k)];
                f[std::size_t(k)] = power_constrained_solve(gram, rhs, pc.power).x;
            }
            double obj = objective();
            res.trace.block_objectives.push_back(obj);
            res.trace.objectives.push_back(obj);
            res.trace.iterations = it + 1;
            if (it > 0 && std::abs(obj - prev) <= eps_obj * (1.0 + std::abs(prev)))
            {
                res.trace.converged = true;
                break;
            }
            prev = obj;
        }

        // Report the receiver matched to the final precoders
        for (Index k = 0; k < K; ++k)
        {
            FullDigitalPair p;
            p.f = f[std::size_t(k)];
            p.g = mmse_combiner(config, channels, f, k);
            p.w = hermitian_part(hpd_inverse(mse_matrix(config, channels, k, f, p.g), "wmmse weight"));
            res.state.pairs.push_back(std::move(p));
        }
        return res;
    }

    WmmseResult wmmse_full_digital(const SystemConfig &config, const ChannelSet &channels,
                                   double eps_obj, int max_iter)
    {
        return wmmse_full_digital(config, channels, eigen_precoders(config, channels), eps_obj, max_iter);
    }
}
