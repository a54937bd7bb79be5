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
#include "hbf/metrics.hpp"
#include "hbf/partial.hpp"
#include "hbf/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace hbf
{
    namespace
    {
        struct SchemeName
        {
            Scheme scheme;
            const char *name;
        };

        constexpr SchemeName scheme_names[] = {
            {Scheme::fd_wmmse, "fd-wmmse"},         {Scheme::fd_bdzf, "fd-bdzf"},
            {Scheme::fd_slnr, "fd-slnr"},           {Scheme::mm_alt_opt, "mm-alt-opt"},
            {Scheme::two_stage_pp, "two-stage-pp"}, {Scheme::hybrid_bdzf, "hybrid-bdzf"},
            {Scheme::hybrid_slnr, "hybrid-slnr"},   {Scheme::partial_tx, "partial-tx"},
            {Scheme::partial_txrx, "partial-txrx"},
        };

        Index integral_value(SweepAxis axis, double v)
        {
            if (!(v >= 1.0) || v != std::floor(v) || v > 1e6)
                throw InvalidInput("sweep " + to_string(axis) + ": values must be positive integers");
            return Index(v);
        }

        // Runs job(i) for i in [0, n) on up to `threads` workers; rethrows the first failure
        void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &job)
        {
            threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(n, 1))));
            if (threads == 1)
            {
                for (std::size_t i = 0; i < n; ++i)
                    job(i);
                return;
            }
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex m;
            auto worker = [&]() {
                for (std::size_t i = next++; i < n; i = next++)
                {
                    try
                    {
                        job(i);
                    }
                    catch (...)
                    {
                        std::lock_guard<std::mutex> lock(m);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            };
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back(worker);
            for (auto &t : pool)
                t.join();
            if (failure)
                std::rethrow_exception(failure);
        }

        double median(std::vector<double> v)
        {
            if (v.empty())
                return 0.0;
            std::sort(v.begin(), v.end());
            std::size_t n = v.size();
            return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        }

        SchemeOutput from_hybrid(HybridState state, int iterations, bool converged)
        {
            SchemeOutput out;
            out.precoders = composed_precoders(state);
            out.combiners = composed_combiners(state);
            out.hybrid = std::move(state);
            out.iterations = iterations;
            out.converged = converged;
            return out;
        }

        // Separate digital precoders with Wiener combiners
        SchemeOutput from_precoders(const SystemConfig &config, const ChannelSet &channels,
                                    std::vector<MatrixXcd> precoders)
        {
            SchemeOutput out;
            for (Index k = 0; k < config.users(); ++k)
                out.combiners.push_back(mmse_combiner(config, channels, precoders, k));
            out.precoders = std::move(precoders);
            out.iterations = 1;
            return out;
        }
    }

    const std::vector<Scheme> &all_schemes()
    {
        static const std::vector<Scheme> all = [] {
            std::vector<Scheme> v;
            for (const auto &s : scheme_names)
                v.push_back(s.scheme);
            return v;
        }();
        return all;
    }

    std::string to_string(Scheme s)
    {
        for (const auto &n : scheme_names)
            if (n.scheme == s)
                return n.name;
        throw InvalidInput("unknown scheme");
    }

    Scheme parse_scheme(const std::string &name)
    {
        for (const auto &n : scheme_names)
            if (name == n.name)
                return n.scheme;
        throw InvalidInput("unknown scheme '" + name + "'");
    }

    bool is_hybrid(Scheme s)
    {
        return s != Scheme::fd_wmmse && s != Scheme::fd_bdzf && s != Scheme::fd_slnr;
    }

    std::string to_string(SweepAxis a)
    {
        switch (a)
        {
        case SweepAxis::snr_db:
            return "snr_db";
        case SweepAxis::n_rf:
            return "n_rf";
        case SweepAxis::n_t:
            return "n_t";
        case SweepAxis::k_users:
            return "k_users";
        }
        throw InvalidInput("unknown sweep axis");
    }

    SweepAxis parse_axis(const std::string &name)
    {
        for (SweepAxis a : {SweepAxis::snr_db, SweepAxis::n_rf, SweepAxis::n_t, SweepAxis::k_users})
            if (to_string(a) == name)
                return a;
        throw InvalidInput("unknown sweep axis '" + name + "'");
    }

    std::string to_string(ChannelModel m)
    {
        return m == ChannelModel::rayleigh ? "rayleigh" : "mmwave";
    }

    ChannelModel parse_channel_model(const std::string &name)
    {
        if (name == "rayleigh")
            return ChannelModel::rayleigh;
        if (name == "mmwave")
            return ChannelModel::mmwave;
        throw InvalidInput("unknown channel model '" + name + "'");
    }

    ScenarioParams ScenarioParams::at(SweepAxis axis, double value) const
    {
        ScenarioParams s = *this;
        switch (axis)
        {
        case SweepAxis::snr_db:
            if (!std::isfinite(value))
                throw InvalidInput("sweep snr_db: values must be finite");
            s.snr_db = value;
            break;
        case SweepAxis::n_rf:
            s.n_rf = integral_value(axis, value);
            break;
        case SweepAxis::n_t:
            s.nt = integral_value(axis, value);
            break;
        case SweepAxis::k_users:
            s.users = integral_value(axis, value);
            break;
        }
        return s;
    }

    SystemConfig ScenarioParams::config() const
    {
        return SystemConfig::uniform(users, nt, nr, n_rf, ns, std::pow(10.0, snr_db / 10.0), 1.0);
    }

    void ExperimentSpec::validate() const
    {
        if (schemes.empty())
            throw InvalidInput("experiment: no schemes");
        if (trials < 1)
            throw InvalidInput("experiment: trials must be >= 1");
        if (values.empty())
            throw InvalidInput("experiment: empty sweep");
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            scenario.at(axis, values[i]);
            if (i > 0 && !(values[i] > values[i - 1]))
                throw InvalidInput("experiment: sweep values must be strictly increasing");
        }
        if (channel.paths < 1)
            throw InvalidInput("experiment: mmWave path count must be >= 1");
        if (!std::isfinite(scenario.snr_db))
            throw InvalidInput("experiment: snr_db must be finite");
        solver.validate();
    }

    std::optional<std::string> check_feasibility(Scheme s, const SystemConfig &config)
    {
        try
        {
            config.validate();
        }
        catch (const Error &e)
        {
            return std::string(e.what());
        }
        if (s == Scheme::fd_bdzf || s == Scheme::hybrid_bdzf)
        {
            for (Index k = 0; k < config.users(); ++k)
            {
                Index leak = 0;
                for (Index i = 0; i < config.users(); ++i)
                    if (i != k)
                        leak += config[i].nr;
                if (config[k].nt - leak < config[k].ns)
                    return "BD-ZF needs Nt - sum of other receivers' Nr >= Ns (pair " +
                           std::to_string(k) + ")";
            }
        }
        return std::nullopt;
    }

    ChannelSet draw_channels(const SystemConfig &config, const ChannelSpec &channel,
                             std::uint64_t seed, int trial)
    {
        RngSpec spec{seed, std::uint64_t(trial)};
        if (channel.model == ChannelModel::rayleigh)
            return gen_rayleigh(config, spec);
        return gen_mmwave(config, channel.paths, spec);
    }

    SchemeOutput solve_scheme(Scheme s, const SystemConfig &config, const ChannelSet &channels,
                              const SolverOptions &opts, RngSpec init_stream)
    {
        switch (s)
        {
        case Scheme::fd_wmmse: {
            WmmseResult r = wmmse_full_digital(config, channels, opts.eps_obj, 200);
            SchemeOutput out;
            out.precoders = r.state.precoders();
            out.combiners = r.state.combiners();
            out.iterations = r.trace.iterations;
            out.converged = r.trace.converged;
            return out;
        }
        case Scheme::fd_bdzf:
        case Scheme::fd_slnr: {
            std::vector<MatrixXcd> f;
            for (Index k = 0; k < config.users(); ++k)
                f.push_back(s == Scheme::fd_bdzf ? bdzf_precoder(config, channels, k)
                                                 : slnr_precoder(config, channels, k));
            return from_precoders(config, channels, std::move(f));
        }
        case Scheme::mm_alt_opt: {
            Rng rng(init_stream);
            HybridResult r = mm_alt_opt(config, channels, opts, rng);
            return from_hybrid(std::move(r.state), r.trace.iterations, r.trace.converged);
        }
        case Scheme::two_stage_pp: {
            HybridResult r = two_stage_pp(config, channels, opts);
            return from_hybrid(std::move(r.state), r.trace.iterations, r.trace.converged);
        }
        case Scheme::hybrid_bdzf:
        case Scheme::hybrid_slnr: {
            ApproxResult r = approx_hybrid(config, channels,
                                           s == Scheme::hybrid_bdzf ? DigitalTarget::bdzf
                                                                    : DigitalTarget::slnr,
                                           opts);
            return from_hybrid(std::move(r.state), r.iterations, r.converged);
        }
        case Scheme::partial_tx:
        case Scheme::partial_txrx: {
            Rng rng(init_stream);
            HybridResult r = partial_mm_alt_opt(config, channels, opts, s == Scheme::partial_tx, rng);
            return from_hybrid(std::move(r.state), r.trace.iterations, r.trace.converged);
        }
        }
        throw InvalidInput("unknown scheme");
    }

    unsigned default_threads()
    {
        if (const char *env = std::getenv("HBF_THREADS"))
        {
            char *end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v >= 1 && v <= 1024)
                return unsigned(v);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    std::vector<SimRecord> run_experiment(const ExperimentSpec &spec, unsigned threads)
    {
        spec.validate();
        std::size_t nv = spec.values.size(), ns = spec.schemes.size(), nt = std::size_t(spec.trials);
        std::vector<SimRecord> records(nv * ns * nt);

        auto job = [&](std::size_t j) {
            std::size_t vi = j / nt;
            int trial = int(j % nt);
            double value = spec.values[vi];
            SystemConfig config = spec.scenario.at(spec.axis, value).config();

            std::vector<std::optional<std::string>> reasons;
            bool any = false;
            for (Scheme s : spec.schemes)
            {
                reasons.push_back(check_feasibility(s, config));
                any = any || !reasons.back();
            }
            ChannelSet channels;
            if (any)
                channels = draw_channels(config, spec.channel, spec.seed, trial);

            for (std::size_t si = 0; si < ns; ++si)
            {
                Scheme s = spec.schemes[si];
                SimRecord &r = records[(vi * ns + si) * nt + std::size_t(trial)];
                r.scheme = to_string(s);
                r.axis = to_string(spec.axis);
                r.sweep_value = value;
                r.trial = trial;
                r.seed = spec.seed;
                if (reasons[si])
                {
                    r.skipped = true;
                    r.skip_reason = *reasons[si];
                    continue;
                }
                RngSpec init = RngSpec{spec.seed, std::uint64_t(trial)}.derive(0x100 + std::uint64_t(s));
                auto t0 = std::chrono::steady_clock::now();
                try
                {
                    SchemeOutput out = solve_scheme(s, config, channels, spec.solver, init);
                    RateReport rate = sum_rate(config, channels, out.precoders, out.combiners);
                    r.sum_rate_bits = rate.sum_rate;
                    r.per_pair_rates = rate.rates;
                    r.outer_iterations = out.iterations;
                    r.converged = out.converged;
                }
                catch (const Infeasible &e)
                {
                    r.skipped = true;
                    r.skip_reason = e.what();
                }
                catch (const NumericalError &e)
                {
                    r.skipped = true;
                    r.skip_reason = e.what();
                }
                if (spec.record_timing)
                    r.wall_time_ms =
                        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                            .count();
            }
        };
        parallel_for(nv * nt, threads ? threads : default_threads(), job);

        if (std::all_of(records.begin(), records.end(), [](const SimRecord &r) { return r.skipped; }))
            throw Infeasible("experiment: every scheme is infeasible at every sweep point (" +
                             records.front().skip_reason + ")");
        // Slots were laid out as (value, scheme, trial); nothing to sort
        return records;
    }

    std::vector<ProbeRow> run_asymptotic_probe(const ScenarioParams &scenario,
                                               const ChannelSpec &channel,
                                               const std::vector<Index> &nt_list, int trials,
                                               std::uint64_t seed, unsigned threads)
    {
        if (trials < 1)
            throw InvalidInput("probe: trials must be >= 1");
        for (std::size_t i = 0; i < nt_list.size(); ++i)
            if (nt_list[i] < 1 || (i > 0 && nt_list[i] <= nt_list[i - 1]))
                throw InvalidInput("probe: antenna counts must be positive and increasing");

        std::size_t nn = nt_list.size(), nt = std::size_t(trials);
        std::vector<double> corr(nn * nt, 0.0), leak(nn * nt, 0.0);
        SolverOptions opts;

        auto job = [&](std::size_t j) {
            std::size_t ni = j / nt;
            int trial = int(j % nt);
            ScenarioParams sp = scenario;
            sp.nt = nt_list[ni];
            SystemConfig config = sp.config();
            config.validate();
            ChannelSet ch = draw_channels(config, channel, seed, trial);
            Index K = config.users();
            if (K < 2)
                return;

            double c = 0.0, l = 0.0;
            for (Index k = 0; k < K; ++k)
            {
                for (Index i = 0; i < K; ++i)
                    if (i != k)
                        c += (ch.h(i, k) * ch.h(k, k).adjoint()).norm() / double(config[k].nt);
                MatrixXcd f = bdzf_precoder(config, ch, k);
                PpFitResult fit = iterative_pp_fit(PrecoderFitProblem::make(f, config[k].nt_rf, config[k].power),
                                                   opts.fit_max_iter, opts.fit_eps);
                l += leakage_norm(ch, k, fit.fa * fit.fd);
            }
            corr[j] = c / double(K * (K - 1));
            leak[j] = l / double(K);
        };
        parallel_for(nn * nt, threads ? threads : default_threads(), job);

        std::vector<ProbeRow> rows;
        for (std::size_t ni = 0; ni < nn; ++ni)
        {
            ProbeRow row;
            row.nt = nt_list[ni];
            row.correlation = median({corr.begin() + long(ni * nt), corr.begin() + long((ni + 1) * nt)});
            row.leakage = median({leak.begin() + long(ni * nt), leak.begin() + long((ni + 1) * nt)});
            rows.push_back(row);
        }
        return rows;
    }
}
