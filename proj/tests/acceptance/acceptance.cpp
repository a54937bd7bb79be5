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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: hbf_acceptance [criterion numbers...]   (default: all)

#include "hbf/digital.hpp"
#include "hbf/error.hpp"
#include "hbf/linalg.hpp"
#include "hbf/metrics.hpp"
#include "hbf/mm.hpp"
#include "hbf/partial.hpp"
#include "hbf/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

using namespace hbf;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    struct Criterion
    {
        int id;
        const char *name;
        double limit_s; // runtime budget
        std::function<Outcome()> run;
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    MatrixXcd cn_matrix(Index r, Index c, Rng &rng)
    {
        MatrixXcd m(r, c);
        for (Index j = 0; j < c; ++j)
            for (Index i = 0; i < r; ++i)
                m(i, j) = rng.cnormal();
        return m;
    }

    VectorXcd random_phases(Index n, Rng &rng)
    {
        VectorXcd v(n);
        for (Index i = 0; i < n; ++i)
            v(i) = std::polar(1.0, rng.angle());
        return v;
    }

    double quad(const MatrixXcd &a, const VectorXcd &lin, const VectorXcd &x)
    {
        return x.dot(a * x).real() - 2.0 * lin.dot(x).real();
    }

    double mean(const std::vector<double> &v)
    {
        double s = 0.0;
        for (double x : v)
            s += x;
        return s / double(v.size());
    }

    // One-sided 95% paired bootstrap: 5th percentile of the resampled mean of a - b
    double bootstrap_lower(const std::vector<double> &a, const std::vector<double> &b, std::uint64_t seed)
    {
        std::vector<double> d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            d[i] = a[i] - b[i];
        Rng rng(seed, 0xb007);
        const int reps = 4000;
        std::vector<double> means(reps);
        for (int r = 0; r < reps; ++r)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i)
                s += d[rng.below(d.size())];
            means[std::size_t(r)] = s / double(d.size());
        }
        std::sort(means.begin(), means.end());
        return means[std::size_t(0.05 * reps)];
    }

    ScenarioParams reference_scenario()
    {
        return ScenarioParams{}; // K=2, Nt=64, Nr=16, 4 RF chains, 4 streams, 0 dB
    }

    // rates[scheme][sweep value] indexed by trial; false if anything was skipped
    using RateTable = std::map<std::string, std::map<double, std::vector<double>>>;
    bool collect(const std::vector<SimRecord> &recs, RateTable &out, int trials)
    {
        for (const auto &r : recs)
        {
            if (r.skipped)
                return false;
            auto &v = out[r.scheme][r.sweep_value];
            v.resize(std::size_t(trials));
            v[std::size_t(r.trial)] = r.sum_rate_bits;
        }
        return true;
    }

    ExperimentSpec reference_experiment(std::vector<Scheme> schemes, int trials, ChannelModel model)
    {
        ExperimentSpec s;
        s.schemes = std::move(schemes);
        s.scenario = reference_scenario();
        s.channel.model = model;
        s.channel.paths = 10;
        s.values = {0.0};
        s.trials = trials;
        s.seed = 20261016;
        return s;
    }

    // 1. MM traces are monotone
    Outcome mm_monotone()
    {
        Rng rng(101, 0);
        int bad = 0;
        double worst = 0.0;
        for (int t = 0; t < 200; ++t)
        {
            Index n = 1 + Index(rng.below(64));
            Index rank = 1 + Index(rng.below(std::uint64_t(n)));
            MatrixXcd g = cn_matrix(n, rank, rng);
            UnitModulusQP qp;
            qp.a_tilde = g * g.adjoint();
            if (t % 4 == 0)
                qp.a_tilde += double(rng.below(3)) * MatrixXcd::Identity(n, n);
            qp.a_tilde = 0.5 * (qp.a_tilde + qp.a_tilde.adjoint()).eval();
            qp.a = cn_matrix(n, 1, rng).col(0) * (t % 5 == 0 ? 0.0 : std::pow(10.0, rng.uniform() * 4 - 2));
            MmOptions o;
            o.eps_obj = 1e-12;
            o.max_iter = 500;
            MmResult r = mm_solve(qp, random_phases(n, rng), o);
            const auto &v = r.trace.objective_values;
            double scale = 0.0;
            for (double x : v)
                scale = std::max(scale, std::abs(x));
            for (std::size_t i = 1; i < v.size(); ++i)
            {
                double rise = (v[i] - v[i - 1]) / std::max(scale, 1e-300);
                worst = std::max(worst, rise);
                if (rise > 1e-9)
                {
                    ++bad;
                    break;
                }
            }
        }
        return {bad == 0, fmt("200 instances, %d non-monotone traces, largest relative rise %.2e (tol 1e-9)", bad, worst)};
    }

    // 2. n = 2 instances against an exhaustive 1 degree grid
    Outcome mm_grid()
    {
        Rng rng(102, 0);
        std::vector<cd> grid(360);
        for (int i = 0; i < 360; ++i)
            grid[std::size_t(i)] = std::polar(1.0, i * std::numbers::pi / 180.0);
        int ok = 0;
        double worst = 0.0;
        for (int t = 0; t < 100; ++t)
        {
            MatrixXcd g = cn_matrix(2, 2, rng);
            UnitModulusQP qp;
            qp.a_tilde = g * g.adjoint();
            qp.a = cn_matrix(2, 1, rng).col(0);
            MmOptions o;
            o.eps_obj = 1e-14;
            o.max_iter = 20000;
            MmResult r = mm_solve(qp, random_phases(2, rng), o);
            double f_mm = quad(qp.a_tilde, qp.a, r.x);

            double best = 1e300;
            VectorXcd x(2);
            for (cd p : grid)
                for (cd q : grid)
                {
                    x << p, q;
                    best = std::min(best, quad(qp.a_tilde, qp.a, x));
                }
            worst = std::max(worst, f_mm - best);
            ok += f_mm <= best + 1e-3;
        }
        return {ok >= 90, fmt("%d/100 within 1e-3 of the grid minimum (need 90), local-minimum rate %.0f%%, "
                              "largest excess %.3g",
                              ok, double(100 - ok), worst)};
    }

    // 3. Block zero forcing nulls the other receivers exactly
    Outcome bdzf_nulling()
    {
        SystemConfig cfg = SystemConfig::uniform(2, 64, 16, 4, 4, 1.0);
        double worst = 0.0;
        bool pass = true;
        for (int t = 0; t < 50; ++t)
        {
            ChannelSet ch = t % 2 ? gen_rayleigh(cfg, RngSpec{103, std::uint64_t(t)})
                                  : gen_mmwave(cfg, 10, RngSpec{103, std::uint64_t(t)});
            for (Index k = 0; k < 2; ++k)
            {
                MatrixXcd f = bdzf_precoder(cfg, ch, k);
                double bound = 1e-9 * leakage_channel(ch, k).norm() * f.norm();
                double leak = leakage_norm(ch, k, f);
                worst = std::max(worst, leak / bound * 1e-9);
                pass = pass && leak <= bound;
            }
        }
        return {pass, fmt("50 draws (mmWave and Rayleigh alternating), worst normalized leakage %.2e (tol 1e-9)", worst)};
    }

    // 4. Water-filling against its KKT conditions
    Outcome waterfill_kkt()
    {
        Rng rng(104, 0);
        double worst = 0.0;
        for (int t = 0; t < 1000; ++t)
        {
            Index n = 1 + Index(rng.below(16));
            VectorXd g(n);
            for (Index i = 0; i < n; ++i)
                g(i) = rng.below(5) == 0 ? 0.0 : std::pow(10.0, 4.0 * rng.uniform() - 2.0);
            if (g.maxCoeff() == 0.0)
                g(0) = 1.0;
            double noise = std::pow(10.0, 2.0 * rng.uniform() - 1.0);
            double power = std::pow(10.0, 4.0 * rng.uniform() - 2.0);
            VectorXd p = waterfill(g, noise, power).allocation;

            // common level over the active set, recovered from the allocation alone
            double level = 0.0;
            int active = 0;
            for (Index i = 0; i < n; ++i)
                if (p(i) > 0.0)
                {
                    level += p(i) + noise / g(i);
                    ++active;
                }
            level /= std::max(active, 1);
            double r = std::abs(p.sum() - power) / power;
            for (Index i = 0; i < n; ++i)
            {
                r = std::max(r, std::max(-p(i), 0.0) / power);
                if (p(i) > 0.0)
                    r = std::max(r, std::abs(p(i) + noise / g(i) - level) / level);
                else if (g(i) > 0.0)
                    r = std::max(r, std::max(level - noise / g(i), 0.0) / level);
            }
            worst = std::max(worst, r);
        }
        return {worst <= 1e-9, fmt("1000 instances, worst relative KKT residual %.2e (tol 1e-9)", worst)};
    }

    // 5. Generalized eigen-decomposition residuals
    Outcome gevd_residuals()
    {
        Rng rng(105, 0);
        double worst_b = 0.0, worst_a = 0.0;
        for (int t = 0; t < 200; ++t)
        {
            Index n = 1 + Index(rng.below(32));
            MatrixXcd ga = cn_matrix(n, 1 + Index(rng.below(std::uint64_t(n))), rng);
            MatrixXcd gb = cn_matrix(n, n, rng);
            MatrixXcd a = ga * ga.adjoint() / double(n);
            MatrixXcd b = gb * gb.adjoint() / double(n) + MatrixXcd::Identity(n, n);
            Gevd e = gevd(a, b);
            worst_b = std::max(worst_b, (e.t.adjoint() * b * e.t - MatrixXcd::Identity(n, n)).norm());
            MatrixXcd d = e.t.adjoint() * a * e.t;
            d.diagonal().setZero();
            worst_a = std::max(worst_a, d.norm());
        }
        return {worst_b <= 1e-9 && worst_a <= 1e-9,
                fmt("200 pencils up to 32x32, max ||T^H B T - I|| %.2e, max ||offdiag(T^H A T)|| %.2e (tol 1e-9)",
                    worst_b, worst_a)};
    }

    // 6. Joint design against the fully digital optimum and the two-stage design
    Outcome joint_vs_digital()
    {
        const int trials = 50;
        ExperimentSpec s = reference_experiment({Scheme::fd_wmmse, Scheme::mm_alt_opt, Scheme::two_stage_pp}, trials,
                                            ChannelModel::mmwave);
        RateTable r;
        if (!collect(run_experiment(s), r, trials))
            return {false, "skipped records"};
        double fd = mean(r["fd-wmmse"][0.0]), mm = mean(r["mm-alt-opt"][0.0]), two = mean(r["two-stage-pp"][0.0]);
        return {mm >= 0.95 * fd && mm >= two,
                fmt("means fd-wmmse %.3f, mm-alt-opt %.3f, two-stage-pp %.3f bits/s/Hz; ratio %.4f (need >= 0.95)", fd,
                    mm, two, mm / fd)};
    }

    // 7. Fully connected > transmit-partial > both-partial, paired
    Outcome connectivity_order()
    {
        const int trials = 50;
        bool pass = true;
        std::string detail;
        for (ChannelModel m : {ChannelModel::mmwave, ChannelModel::rayleigh})
        {
            ExperimentSpec s =
                reference_experiment({Scheme::mm_alt_opt, Scheme::partial_tx, Scheme::partial_txrx}, trials, m);
            RateTable r;
            if (!collect(run_experiment(s), r, trials))
                return {false, "skipped records"};
            const auto &a = r["mm-alt-opt"][0.0], &b = r["partial-tx"][0.0], &c = r["partial-txrx"][0.0];
            double lo1 = bootstrap_lower(a, b, 1), lo2 = bootstrap_lower(b, c, 2);
            bool ok = mean(a) >= mean(b) && mean(b) >= mean(c) && lo1 > 0.0 && lo2 > 0.0;
            pass = pass && ok;
            detail += fmt("%s%s: means %.3f >= %.3f >= %.3f, gap 5th percentiles %.3f, %.3f", detail.empty() ? "" : "; ",
                          to_string(m).c_str(), mean(a), mean(b), mean(c), lo1, lo2);
        }
        return {pass, detail};
    }

    // 8. Twice as many RF chains as streams
    Outcome rf_sweep()
    {
        const int trials = 25;
        ExperimentSpec s = reference_experiment({Scheme::fd_wmmse, Scheme::mm_alt_opt}, trials, ChannelModel::mmwave);
        s.scenario.n_rf = 8;
        RateTable r;
        if (!collect(run_experiment(s), r, trials))
            return {false, "skipped records"};
        double fd = mean(r["fd-wmmse"][0.0]), mm = mean(r["mm-alt-opt"][0.0]);
        double gap = std::abs(mm - fd) / fd;
        return {gap <= 0.03, fmt("NRF = 8: means fd-wmmse %.3f, mm-alt-opt %.3f, relative gap %.4f (tol 0.03)", fd, mm, gap)};
    }

    // 9. Leakage-aware fit beats the zero-forcing fit at low SNR
    Outcome slnr_vs_bdzf()
    {
        const int trials = 50;
        ExperimentSpec s = reference_experiment({Scheme::hybrid_bdzf, Scheme::hybrid_slnr}, trials, ChannelModel::mmwave);
        s.values = {-10.0, -5.0, 0.0};
        RateTable r;
        if (!collect(run_experiment(s), r, trials))
            return {false, "skipped records"};
        bool pass = true;
        std::string detail;
        for (double v : s.values)
        {
            double b = mean(r["hybrid-bdzf"][v]), l = mean(r["hybrid-slnr"][v]);
            pass = pass && l >= b;
            detail += fmt("%s%g dB: slnr %.3f vs bdzf %.3f", detail.empty() ? "" : "; ", v, l, b);
        }
        return {pass, detail};
    }

    // 10. Large-array decay of cross correlation and hybrid leakage
    Outcome asymptotics()
    {
        std::vector<Index> nts{32, 64, 128, 256, 512};
        const int trials = 50;
        std::vector<ProbeRow> ray = run_asymptotic_probe(reference_scenario(), {ChannelModel::rayleigh, 10}, nts, trials, 110);
        std::vector<ProbeRow> mmw = run_asymptotic_probe(reference_scenario(), {ChannelModel::mmwave, 10}, nts, trials, 110);

        // least-squares slope in log-log coordinates
        double sx = 0, sy = 0, sxx = 0, sxy = 0, n = double(nts.size());
        for (const auto &row : ray)
        {
            double x = std::log(double(row.nt)), y = std::log(row.correlation);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        bool decreasing = true;
        std::string leak, scaled;
        for (std::size_t i = 0; i < mmw.size(); ++i)
        {
            if (i > 0)
                decreasing = decreasing && mmw[i].leakage < mmw[i - 1].leakage;
            leak += fmt("%s%.3g", i ? ", " : "", mmw[i].leakage);
            // diagnostic only: leakage of the per-antenna normalized channel
            scaled += fmt("%s%.3g", i ? ", " : "", mmw[i].leakage / std::sqrt(double(mmw[i].nt)));
        }
        return {slope >= -0.65 && slope <= -0.35 && decreasing,
                fmt("Rayleigh correlation slope %.3f (need [-0.65, -0.35]); mmWave leakage medians %s (need strictly "
                    "decreasing; divided by sqrt(Nt): %s)",
                    slope, leak.c_str(), scaled.c_str())};
    }

    // 11. Every emitted design is feasible
    Outcome feasibility()
    {
        const int trials = 25;
        ScenarioParams sc = reference_scenario();
        SystemConfig cfg = sc.config();
        SolverOptions opts;
        const std::uint64_t seed = 111;
        double worst_mod = 0.0, worst_pow = 0.0, worst_support = 0.0;
        int checked = 0;
        for (int t = 0; t < trials; ++t)
        {
            ChannelSet ch = draw_channels(cfg, ChannelSpec{}, seed, t);
            for (Scheme s : all_schemes())
            {
                SchemeOutput o = solve_scheme(s, cfg, ch, opts, RngSpec{seed, std::uint64_t(t)}.derive(0x100 + int(s)));
                ++checked;
                for (Index k = 0; k < cfg.users(); ++k)
                {
                    double p = o.precoders[std::size_t(k)].squaredNorm();
                    worst_pow = std::max(worst_pow, (p - cfg[k].power) / cfg[k].power);
                    if (!o.hybrid)
                        continue;
                    const HybridPair &hp = o.hybrid->pairs[std::size_t(k)];
                    worst_pow = std::max(worst_pow, ((hp.fa * hp.fd).squaredNorm() - cfg[k].power) / cfg[k].power);
                    bool ptx = s == Scheme::partial_tx || s == Scheme::partial_txrx;
                    bool prx = s == Scheme::partial_txrx;
                    auto check = [&](const MatrixXcd &m, bool block, Index rf) {
                        std::vector<Index> blocks = split_blocks(m.rows(), rf);
                        Index row0 = 0;
                        for (Index c = 0; c < m.cols(); ++c)
                        {
                            Index len = blocks[std::size_t(c)];
                            for (Index r = 0; r < m.rows(); ++r)
                            {
                                bool on = !block || (r >= row0 && r < row0 + len);
                                if (on)
                                    worst_mod = std::max(worst_mod, std::abs(std::abs(m(r, c)) - 1.0));
                                else
                                    worst_support = std::max(worst_support, std::abs(m(r, c)));
                            }
                            row0 += len;
                        }
                    };
                    check(hp.fa, ptx, cfg[k].nt_rf);
                    check(hp.ga, prx, cfg[k].nr_rf);
                }
            }
        }
        return {worst_mod <= 1e-12 && worst_pow <= 1e-9 && worst_support == 0.0,
                fmt("%d designs; worst modulus error %.2e (tol 1e-12), worst relative power excess %.2e (tol 1e-9), "
                    "largest off-support entry %.1e (must be 0)",
                    checked, worst_mod, worst_pow, worst_support)};
    }

    // 12. Same seed, same bytes, any worker count
    Outcome determinism()
    {
        ExperimentSpec s;
        s.schemes = all_schemes();
        s.scenario.nt = 32;
        s.scenario.nr = 8;
        s.scenario.n_rf = 3;
        s.scenario.ns = 2;
        s.channel.paths = 6;
        s.values = {-5.0, 5.0};
        s.trials = 3;
        s.seed = 112;
        std::vector<SimRecord> a = run_experiment(s, 1), b = run_experiment(s, 1), c = run_experiment(s, 4);
        bool same = to_csv(a) == to_csv(b) && to_csv(a) == to_csv(c) && to_json(a) == to_json(b) &&
                    to_json(a) == to_json(c);
        s.channel.model = ChannelModel::rayleigh;
        s.axis = SweepAxis::n_rf;
        s.values = {2.0, 4.0};
        same = same && to_csv(run_experiment(s, 1)) == to_csv(run_experiment(s, 3));
        return {same, fmt("%zu records, CSV and JSON byte-identical across reruns and 1/3/4 workers: %s", a.size(),
                          same ? "yes" : "no")};
    }
}

int main(int argc, char **argv)
{
    std::vector<Criterion> all{
        {1, "MM monotonicity", 10, mm_monotone},
        {2, "MM vs exhaustive grid", 60, mm_grid},
        {3, "BD-ZF exact nulling", 10, bdzf_nulling},
        {4, "water-filling KKT", 5, waterfill_kkt},
        {5, "GEVD residuals", 10, gevd_residuals},
        {6, "joint hybrid vs fully digital", 900, joint_vs_digital},
        {7, "connectivity ordering", 1200, connectivity_order},
        {8, "RF chains = 2 x streams", 900, rf_sweep},
        {9, "SLNR fit vs BD-ZF fit", 900, slnr_vs_bdzf},
        {10, "large-array decay", 300, asymptotics},
        {11, "feasibility sweep", 1200, feasibility},
        {12, "determinism", 300, determinism},
    };
    std::set<int> pick;
    for (int i = 1; i < argc; ++i)
        pick.insert(std::stoi(argv[i]));

    int failed = 0;
    for (const auto &c : all)
    {
        if (!pick.empty() && !pick.count(c.id))
            continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs <= c.limit_s;
        bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("criterion %2d %s  %s: %s; %.1f s (limit %.0f s%s)\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), secs, c.limit_s, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
