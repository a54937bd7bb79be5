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

#include "hbf/metrics.hpp"
#include "hbf/error.hpp"
#include "hbf/linalg.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hbf
{
    namespace
    {
        void check_sizes(const SystemConfig &config, const ChannelSet &channels, std::size_t n)
        {
            if (channels.users() != config.users() || Index(n) != config.users())
                throw InvalidDimension("metrics: pair count mismatch between config, channels and state");
        }

        // log2 det(I + T T^H R^{-1}) via the eigenvalues of R^{-1/2} T T^H R^{-1/2}
        double pair_rate(const MatrixXcd &t, const MatrixXcd &r, Index k)
        {
            if (t.norm() == 0.0)
                return 0.0;
            Index n = r.rows();
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitian_part(r));
            VectorXd ev = es.eigenvalues();
            if (!(ev(0) > 0.0) || ev(n - 1) / ev(0) > 1e12)
            {
                ev.array() += 1e-12 * r.trace().real() / double(n);
                if (!(ev(0) > 0.0))
                    throw NumericalError("sum_rate: interference-plus-noise covariance of pair " +
                                         std::to_string(k) + " is singular after regularization");
            }
            MatrixXcd m = ev.cwiseSqrt().cwiseInverse().asDiagonal() * (es.eigenvectors().adjoint() * t);
            VectorXd s = Eigen::SelfAdjointEigenSolver<MatrixXcd>(m * m.adjoint(), Eigen::EigenvaluesOnly)
                             .eigenvalues();
            double acc = 0.0;
            for (Index i = 0; i < s.size(); ++i)
                acc += std::log2(1.0 + std::max(s(i), 0.0));
            return acc;
        }
    }

    std::vector<MatrixXcd> composed_precoders(const HybridState &state)
    {
        std::vector<MatrixXcd> out;
        out.reserve(state.pairs.size());
        for (const auto &p : state.pairs)
            out.push_back(p.fa * p.fd);
        return out;
    }

    std::vector<MatrixXcd> composed_combiners(const HybridState &state)
    {
        std::vector<MatrixXcd> out;
        out.reserve(state.pairs.size());
        for (const auto &p : state.pairs)
            out.push_back(p.ga * p.gd);
        return out;
    }

    MatrixXcd receive_covariance(const SystemConfig &config, const ChannelSet &channels, Index k,
                                 const std::vector<MatrixXcd> &precoders, bool include_own)
    {
        Index nr = config[k].nr;
        MatrixXcd r = config[k].noise * MatrixXcd::Identity(nr, nr);
        for (Index i = 0; i < config.users(); ++i)
        {
            if (i == k && !include_own)
                continue;
            MatrixXcd hf = channels.h(k, i) * precoders[std::size_t(i)];
            r.noalias() += hf * hf.adjoint();
        }
        return hermitian_part(r);
    }

    RateReport sum_rate(const SystemConfig &config, const ChannelSet &channels,
                        const std::vector<MatrixXcd> &precoders,
                        const std::vector<MatrixXcd> &combiners)
    {
        check_sizes(config, channels, precoders.size());
        check_sizes(config, channels, combiners.size());
        RateReport rep;
        for (Index k = 0; k < config.users(); ++k)
        {
            const MatrixXcd &g = combiners[std::size_t(k)];
            MatrixXcd t = g.adjoint() * channels.h(k, k) * precoders[std::size_t(k)];
            MatrixXcd r = g.adjoint() * receive_covariance(config, channels, k, precoders, false) * g;
            double rk = pair_rate(t, r, k);
            rep.rates.push_back(rk);
            rep.sum_rate += rk;
        }
        return rep;
    }

    RateReport sum_rate(const SystemConfig &config, const ChannelSet &channels,
                        const HybridState &state)
    {
        return sum_rate(config, channels, composed_precoders(state), composed_combiners(state));
    }

    MatrixXcd mse_matrix(const SystemConfig &config, const ChannelSet &channels, Index k,
                         const std::vector<MatrixXcd> &precoders, const MatrixXcd &g)
    {
        Index ns = g.cols();
        MatrixXcd gh = g.adjoint();
        MatrixXcd d = gh * channels.h(k, k) * precoders[std::size_t(k)] - MatrixXcd::Identity(ns, ns);
        MatrixXcd e = d * d.adjoint() + config[k].noise * (gh * g);
        for (Index i = 0; i < config.users(); ++i)
        {
            if (i == k)
                continue;
            MatrixXcd x = gh * channels.h(k, i) * precoders[std::size_t(i)];
            e.noalias() += x * x.adjoint();
        }
        return hermitian_part(e);
    }

    double wmmse_term(const MatrixXcd &w, const MatrixXcd &e)
    {
        return (w * e).trace().real() - log_det_hpd(w, "wmmse objective weight") - double(w.rows());
    }

    MseReport mse_matrices(const SystemConfig &config, const ChannelSet &channels,
                           const std::vector<MatrixXcd> &precoders,
                           const std::vector<MatrixXcd> &combiners,
                           const std::vector<MatrixXcd> &weights)
    {
        check_sizes(config, channels, precoders.size());
        check_sizes(config, channels, combiners.size());
        check_sizes(config, channels, weights.size());
        MseReport rep;
        for (Index k = 0; k < config.users(); ++k)
        {
            rep.e.push_back(mse_matrix(config, channels, k, precoders, combiners[std::size_t(k)]));
            rep.wmmse_objective += wmmse_term(weights[std::size_t(k)], rep.e.back());
        }
        return rep;
    }

    MseReport mse_matrices(const SystemConfig &config, const ChannelSet &channels,
                           const HybridState &state)
    {
        std::vector<MatrixXcd> w;
        for (const auto &p : state.pairs)
            w.push_back(p.w);
        return mse_matrices(config, channels, composed_precoders(state), composed_combiners(state), w);
    }

    double slnr(const SystemConfig &config, const ChannelSet &channels, Index k, const MatrixXcd &f)
    {
        if (f.rows() != config[k].nt)
            throw InvalidDimension("slnr: precoder row count must equal Nt");
        double signal = (channels.h(k, k) * f).squaredNorm();
        double leak = config[k].noise * double(f.cols());
        for (Index i = 0; i < config.users(); ++i)
            if (i != k)
                leak += (channels.h(i, k) * f).squaredNorm();
        return signal / leak;
    }

    double leakage_norm(const ChannelSet &channels, Index k, const MatrixXcd &f)
    {
        double worst = 0.0;
        for (Index i = 0; i < channels.users(); ++i)
            if (i != k)
                worst = std::max(worst, (channels.h(i, k) * f).norm());
        return worst;
    }

    double tx_power(const HybridState &state, Index k)
    {
        const HybridPair &p = state.pairs[std::size_t(k)];
        return (p.fa * p.fd).squaredNorm();
    }
}
