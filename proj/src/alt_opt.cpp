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
#include "hbf/joint.hpp"
#include "hbf/linalg.hpp"
#include "hbf/metrics.hpp"
#include "hbf/partial.hpp"

#include <cmath>
#include <string>

namespace hbf
{
    namespace
    {
        double top_eigenvalue(const MatrixXcd &m)
        {
            if (m.rows() == 0)
                return 0.0;
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitian_part(m), Eigen::EigenvaluesOnly);
            return std::max(es.eigenvalues()(m.rows() - 1), 0.0);
        }

        MatrixXcd combiner_of(const AltOptPair &p)
        {
            return p.ga * p.gd;
        }

        MmOptions inner_options(const SolverOptions &opts)
        {
            MmOptions o;
            o.eps_obj = opts.eps_obj;
            o.max_iter = opts.max_inner;
            o.exact_eig_limit = opts.exact_eig_limit;
            return o;
        }

        void check_state(const AltOptState &state, const SystemConfig &config)
        {
            if (state.users() != config.users())
                throw InvalidDimension("alternating solver: state and config pair counts differ");
        }
    }

    void SolverOptions::validate() const
    {
        if (!(eps_obj > 0.0))
            throw InvalidInput("SolverOptions: eps_obj must be positive");
        if (max_outer < 1 || max_inner < 1)
            throw InvalidInput("SolverOptions: iteration caps must be >= 1");
    }

    std::vector<MatrixXcd> effective_precoders(const AltOptState &state)
    {
        std::vector<MatrixXcd> out;
        out.reserve(state.pairs.size());
        for (const auto &p : state.pairs)
            out.push_back(p.fa * p.tx_scale.asDiagonal() * p.fd_tilde);
        return out;
    }

    double alt_opt_objective(const AltOptState &state, const ChannelSet &channels,
                             const SystemConfig &config)
    {
        check_state(state, config);
        std::vector<MatrixXcd> f = effective_precoders(state);
        double acc = 0.0;
        for (Index k = 0; k < config.users(); ++k)
        {
            const AltOptPair &p = state.pairs[std::size_t(k)];
            acc += wmmse_term(p.w, mse_matrix(config, channels, k, f, combiner_of(p)));
        }
        return acc;
    }

    void update_digital_combiner(AltOptState &state, const ChannelSet &channels,
                                 const SystemConfig &config)
    {
        check_state(state, config);
        std::vector<MatrixXcd> f = effective_precoders(state);
        for (Index k = 0; k < config.users(); ++k)
        {
            AltOptPair &p = state.pairs[std::size_t(k)];
            MatrixXcd r = receive_covariance(config, channels, k, f, true);
            MatrixXcd q = hpd_inverse(p.ga.adjoint() * r * p.ga, "digital combiner");
            p.gd = q * (p.ga.adjoint() * channels.h(k, k) * f[std::size_t(k)]);
        }
    }

    void update_weights(AltOptState &state, const ChannelSet &channels, const SystemConfig &config)
    {
        check_state(state, config);
        std::vector<MatrixXcd> f = effective_precoders(state);
        for (Index k = 0; k < config.users(); ++k)
        {
            AltOptPair &p = state.pairs[std::size_t(k)];
            MatrixXcd e = mse_matrix(config, channels, k, f, combiner_of(p));
            p.w = hermitian_part(hpd_inverse(e, "weight update"));
        }
    }

    void update_digital_precoder(AltOptState &state, const ChannelSet &channels,
                                 const SystemConfig &config)
    {
        check_state(state, config);
        Index K = config.users();
        std::vector<MatrixXcd> g(static_cast<std::size_t>(K));
        for (Index i = 0; i < K; ++i)
            g[std::size_t(i)] = combiner_of(state.pairs[std::size_t(i)]);

        for (Index k = 0; k < K; ++k)
        {
            AltOptPair &p = state.pairs[std::size_t(k)];
            MatrixXcd amap = p.fa * p.tx_scale.asDiagonal();
            Index n = amap.cols();
            MatrixXcd gram = MatrixXcd::Zero(n, n);
            MatrixXcd rhs;
            for (Index i = 0; i < K; ++i)
            {
                MatrixXcd l = g[std::size_t(i)].adjoint() * channels.h(i, k) * amap;
                const MatrixXcd &wi = state.pairs[std::size_t(i)].w;
                gram.noalias() += l.adjoint() * wi * l;
                if (i == k)
                    rhs = l.adjoint() * wi;
            }
            p.fd_tilde = power_constrained_solve(gram, rhs, config[k].power).x;
        }
    }

    UnitModulusQP assemble_precoder_qp(const AltOptState &state, const ChannelSet &channels,
                                       const SystemConfig &config, Index k)
    {
        check_state(state, config);
        const AltOptPair &pk = state.pairs[std::size_t(k)];
        Index nt = config[k].nt;
        MatrixXcd d = pk.tx_scale.asDiagonal() * pk.fd_tilde;
        MatrixXcd b = d * d.adjoint();
        MatrixXcd c = MatrixXcd::Zero(nt, nt);
        for (Index i = 0; i < config.users(); ++i)
        {
            const AltOptPair &pi = state.pairs[std::size_t(i)];
            MatrixXcd m = channels.h(i, k).adjoint() * combiner_of(pi);
            c.noalias() += m * pi.w * m.adjoint();
        }
        c = hermitian_part(c);
        b = hermitian_part(b);

        UnitModulusQP qp;
        qp.a_tilde = kron(b.transpose(), c);
        MatrixXcd mkk = channels.h(k, k).adjoint() * combiner_of(pk);
        qp.a = vec(mkk * pk.w * d.adjoint());
        qp.lambda_bound = top_eigenvalue(b) * top_eigenvalue(c);
        qp.support = {IndexBlock{0, qp.a.size()}};
        return qp;
    }

    UnitModulusQP assemble_combiner_qp(const AltOptState &state, const ChannelSet &channels,
                                       const SystemConfig &config, Index k)
    {
        check_state(state, config);
        const AltOptPair &pk = state.pairs[std::size_t(k)];
        std::vector<MatrixXcd> f = effective_precoders(state);
        MatrixXcd r = receive_covariance(config, channels, k, f, true);
        MatrixXcd b = hermitian_part(pk.gd * pk.w * pk.gd.adjoint());

        UnitModulusQP qp;
        qp.a_tilde = kron(b.transpose(), r);
        qp.a = vec(channels.h(k, k) * f[std::size_t(k)] * pk.w * pk.gd.adjoint());
        qp.lambda_bound = top_eigenvalue(b) * top_eigenvalue(r);
        qp.support = {IndexBlock{0, qp.a.size()}};
        return qp;
    }

    std::vector<MMTrace> update_analog_precoder(AltOptState &state, const ChannelSet &channels,
                                                const SystemConfig &config, const SolverOptions &opts)
    {
        check_state(state, config);
        std::vector<MMTrace> traces;
        MmOptions mo = inner_options(opts);
        for (Index k = 0; k < config.users(); ++k)
        {
            AltOptPair &p = state.pairs[std::size_t(k)];
            if (p.tx_blocks.empty())
            {
                UnitModulusQP qp = assemble_precoder_qp(state, channels, config, k);
                MmResult res = mm_solve(qp, vec(p.fa), mo);
                p.fa = unvec(res.x, p.fa.rows(), p.fa.cols());
                traces.push_back(std::move(res.trace));
            }
            else
            {
                UnitModulusQP qp = assemble_partial_precoder_qp(state, channels, config, k, p.tx_blocks);
                MmResult res = mm_solve(qp, gather_support(p.fa, p.tx_blocks), mo);
                p.fa = scatter_support(res.x, p.tx_blocks);
                traces.push_back(std::move(res.trace));
            }
        }
        return traces;
    }

    std::vector<MMTrace> update_analog_combiner(AltOptState &state, const ChannelSet &channels,
                                                const SystemConfig &config, const SolverOptions &opts)
    {
        check_state(state, config);
        std::vector<MMTrace> traces;
        MmOptions mo = inner_options(opts);
        // Every pair's problem only involves the precoders, so solve them all first
        std::vector<UnitModulusQP> qps;
        for (Index k = 0; k < config.users(); ++k)
        {
            const AltOptPair &p = state.pairs[std::size_t(k)];
            qps.push_back(p.rx_blocks.empty()
                              ? assemble_combiner_qp(state, channels, config, k)
                              : assemble_partial_combiner_qp(state, channels, config, k, p.rx_blocks));
        }
        for (Index k = 0; k < config.users(); ++k)
        {
            AltOptPair &p = state.pairs[std::size_t(k)];
            const UnitModulusQP &qp = qps[std::size_t(k)];
            if (p.rx_blocks.empty())
            {
                MmResult res = mm_solve(qp, vec(p.ga), mo);
                p.ga = unvec(res.x, p.ga.rows(), p.ga.cols());
                traces.push_back(std::move(res.trace));
            }
            else
            {
                MmResult res = mm_solve(qp, gather_support(p.ga, p.rx_blocks), mo);
                p.ga = scatter_support(res.x, p.rx_blocks);
                traces.push_back(std::move(res.trace));
            }
        }
        return traces;
    }

    void reset_digital_precoder(AltOptState &state, const ChannelSet &channels,
                                const SystemConfig &config)
    {
        check_state(state, config);
        for (Index k = 0; k < config.users(); ++k)
        {
            AltOptPair &p = state.pairs[std::size_t(k)];
            const PairConfig &pc = config[k];
            MatrixXcd heff = p.ga.adjoint() * channels.h(k, k) * p.fa * p.tx_scale.asDiagonal();
            Svd d = svd(heff, true);
            p.fd_tilde = std::sqrt(pc.power / double(pc.ns)) * d.v.leftCols(pc.ns);
        }
    }

    AltOptState init_alt_opt_state(const SystemConfig &config, const ChannelSet &channels,
                                   InitMode mode, Rng *rng)
    {
        config.validate();
        channels.validate(config);
        AltOptState state;
        for (Index k = 0; k < config.users(); ++k)
        {
            const PairConfig &pc = config[k];
            AltOptPair p;
            if (mode == InitMode::two_stage_pp)
            {
                Svd d = svd(channels.h(k, k), true);
                p.fa = phase_projection(MatrixXcd(d.v.leftCols(pc.nt_rf)));
                p.ga = phase_projection(MatrixXcd(d.u.leftCols(pc.nr_rf)));
            }
            else
            {
                if (!rng)
                    throw InvalidInput("init_alt_opt_state: random init needs a generator");
                p.fa = random_unit_modulus(pc.nt, pc.nt_rf, *rng);
                p.ga = random_unit_modulus(pc.nr, pc.nr_rf, *rng);
            }
            p.tx_scale = VectorXd::Constant(pc.nt_rf, 1.0 / std::sqrt(double(pc.nt)));
            p.gd = MatrixXcd::Zero(pc.nr_rf, pc.ns);
            p.w = MatrixXcd::Identity(pc.ns, pc.ns);
            state.pairs.push_back(std::move(p));
        }
        reset_digital_precoder(state, channels, config);
        return state;
    }

    AltOptTrace run_alternating(AltOptState &state, const ChannelSet &channels,
                                const SystemConfig &config, const SolverOptions &opts,
                                bool update_analog)
    {
        opts.validate();
        check_state(state, config);
        AltOptTrace tr;
        auto record = [&]() { tr.block_objectives.push_back(alt_opt_objective(state, channels, config)); };
        double prev = 0.0;
        for (int it = 0; it < opts.max_outer; ++it)
        {
            update_digital_combiner(state, channels, config);
            record();
            update_weights(state, channels, config);
            record();
            update_digital_precoder(state, channels, config);
            record();
            if (update_analog)
            {
                for (auto &t : update_analog_precoder(state, channels, config, opts))
                    tr.precoder_mm.push_back(std::move(t));
                record();
                for (auto &t : update_analog_combiner(state, channels, config, opts))
                    tr.combiner_mm.push_back(std::move(t));
                record();
            }
            double obj = tr.block_objectives.back();
            tr.outer_objectives.push_back(obj);
            tr.iterations = it + 1;
            if (it > 0 && std::abs(obj - prev) <= opts.eps_obj * (1.0 + std::abs(prev)))
            {
                tr.converged = true;
                break;
            }
            prev = obj;
        }
        return tr;
    }

    HybridState recover_hybrid_state(const AltOptState &state, std::vector<std::string> *warnings)
    {
        HybridState out;
        for (std::size_t k = 0; k < state.pairs.size(); ++k)
        {
            const AltOptPair &p = state.pairs[k];
            HybridPair h;
            h.fa = p.fa;
            h.ga = p.ga;
            h.gd = p.gd;
            h.w = p.w;
            if (p.tx_blocks.empty())
            {
                bool deficient = false;
                MatrixXcd root = hermitian_inv_sqrt(p.fa.adjoint() * p.fa, &deficient);
                if (deficient && warnings)
                    warnings->push_back("pair " + std::to_string(k) +
                                        ": analog precoder Gram is rank deficient, using pseudo-inverse root");
                h.fd = root * p.fd_tilde;
            }
            else
            {
                // Gram is diag(block sizes) exactly
                h.fd = p.tx_scale.asDiagonal() * p.fd_tilde;
            }
            out.pairs.push_back(std::move(h));
        }
        return out;
    }

    HybridResult mm_alt_opt(const SystemConfig &config, const ChannelSet &channels,
                            const SolverOptions &opts, Rng &rng)
    {
        opts.validate();
        AltOptState state = init_alt_opt_state(config, channels, opts.init, &rng);
        std::vector<std::string> warnings;
        for (Index k = 0; k < config.users(); ++k)
            if (config[k].nt < 16)
                warnings.push_back("pair " + std::to_string(k) +
                                   ": Nt < 16, the 1/sqrt(Nt) analog surrogate is coarse");
        HybridResult res;
        res.trace = run_alternating(state, channels, config, opts, true);
        res.trace.warnings.insert(res.trace.warnings.begin(), warnings.begin(), warnings.end());
        res.state = recover_hybrid_state(state, &res.trace.warnings);
        return res;
    }

    HybridResult two_stage_pp(const SystemConfig &config, const ChannelSet &channels,
                              const SolverOptions &opts)
    {
        opts.validate();
        AltOptState state = init_alt_opt_state(config, channels, InitMode::two_stage_pp, nullptr);
        HybridResult res;
        res.trace = run_alternating(state, channels, config, opts, false);
        res.state = recover_hybrid_state(state, &res.trace.warnings);
        return res;
    }
}
