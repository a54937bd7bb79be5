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


#ifndef HBF_SIM_HPP
#define HBF_SIM_HPP

#include "hbf/joint.hpp"
#include "hbf/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hbf
{
    enum class Scheme
    {
        fd_wmmse,
        fd_bdzf,
        fd_slnr,
        mm_alt_opt,
        two_stage_pp,
        hybrid_bdzf,
        hybrid_slnr,
        partial_tx,
        partial_txrx
    };

    const std::vector<Scheme> &all_schemes();
    std::string to_string(Scheme s);
    Scheme parse_scheme(const std::string &name); // throws InvalidInput
    bool is_hybrid(Scheme s);

    enum class SweepAxis
    {
        snr_db,
        n_rf,
        n_t,
        k_users
    };

    std::string to_string(SweepAxis a);
    SweepAxis parse_axis(const std::string &name);

    struct ChannelSpec
    {
        ChannelModel model = ChannelModel::mmwave;
        Index paths = 10;
    };

    std::string to_string(ChannelModel m);
    ChannelModel parse_channel_model(const std::string &name);

    // Symmetric scenario; SNR = P / sigma2 with sigma2 = 1
    struct ScenarioParams
    {
        Index users = 2;
        Index nt = 64, nr = 16;
        Index n_rf = 4; // per side
        Index ns = 4;
        double snr_db = 0.0;

        // Copy with the swept quantity replaced
        ScenarioParams at(SweepAxis axis, double value) const;
        SystemConfig config() const;
    };

    struct ExperimentSpec
    {
        std::vector<Scheme> schemes;
        ScenarioParams scenario;
        ChannelSpec channel;
        SweepAxis axis = SweepAxis::snr_db;
        std::vector<double> values{0.0};
        int trials = 1;
        std::uint64_t seed = 1;
        SolverOptions solver;
        bool record_timing = false; // wall_time_ms stays 0 otherwise

        void validate() const; // throws InvalidInput
    };

    struct SimRecord
    {
        std::string scheme;
        std::string axis;
        double sweep_value = 0.0;
        int trial = 0;
        std::uint64_t seed = 0;
        double sum_rate_bits = 0.0;
        std::vector<double> per_pair_rates;
        int outer_iterations = 0;
        bool converged = false;
        double wall_time_ms = 0.0;
        bool skipped = false;
        std::string skip_reason;
    };

    struct SchemeOutput
    {
        std::vector<MatrixXcd> precoders, combiners;
        std::optional<HybridState> hybrid;
        int iterations = 0;
        bool converged = true;
    };

    // nullopt when the scheme can run at this configuration, else the reason
    std::optional<std::string> check_feasibility(Scheme s, const SystemConfig &config);

    ChannelSet draw_channels(const SystemConfig &config, const ChannelSpec &channel,
                             std::uint64_t seed, int trial);

    // init_stream seeds random initializations only
    SchemeOutput solve_scheme(Scheme s, const SystemConfig &config, const ChannelSet &channels,
                              const SolverOptions &opts, RngSpec init_stream);

    // Worker count from HBF_THREADS, else the hardware concurrency
    unsigned default_threads();

    // Records ordered by sweep value, then scheme (order of spec.schemes), then trial.
    // threads = 0 picks default_threads(). Throws Infeasible if every record is skipped.
    std::vector<SimRecord> run_experiment(const ExperimentSpec &spec, unsigned threads = 0);

    struct ProbeRow
    {
        Index nt = 0;
        double correlation = 0.0; // median of mean_{i != k} ||H_{i,k} H_{k,k}^H||_F / Nt
        double leakage = 0.0;     // median of mean_k leakage_norm of the hybrid BD-ZF precoder
    };

    std::vector<ProbeRow> run_asymptotic_probe(const ScenarioParams &scenario,
                                               const ChannelSpec &channel,
                                               const std::vector<Index> &nt_list, int trials,
                                               std::uint64_t seed, unsigned threads = 0);

    // Output
    enum class OutputFormat
    {
        csv,
        json
    };

    OutputFormat parse_format(const std::string &name);
    std::string to_csv(const std::vector<SimRecord> &records);
    std::string to_json(const std::vector<SimRecord> &records);
    std::vector<SimRecord> parse_csv(const std::string &text); // throws InvalidInput
    std::string probe_to_csv(const std::vector<ProbeRow> &rows);
    void write_file(const std::string &path, const std::string &content); // throws IoError
    void emit(const std::vector<SimRecord> &records, const std::string &path, OutputFormat format);

    // Config documents (JSON) and presets
    // Keys present in the document override base
    ExperimentSpec spec_from_json(const std::string &text, ExperimentSpec base = {}); // throws InvalidInput
    std::string spec_to_json(const ExperimentSpec &spec);
    ExperimentSpec preset(const std::string &name); // "full" or "desk"
}

#endif
