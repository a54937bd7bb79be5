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


// Command-line front end: Monte-Carlo sweeps and the asymptotic probe.
//
//   hbf_sim run --preset desk --scheme mm-alt-opt,fd-wmmse --out rates.csv
//   hbf_sim probe --channel rayleigh --nt 32,64,128 --trials 20

#include "hbf/error.hpp"
#include "hbf/sim.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace
{
    constexpr int exit_invalid = 2;
    constexpr int exit_infeasible = 3;
    constexpr int exit_io = 4;

    std::string read_file(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw hbf::IoError("cannot read '" + path + "'");
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
    }

    void output(const std::string &path, const std::string &content)
    {
        if (path.empty() || path == "-")
            std::cout << content;
        else
            hbf::write_file(path, content);
    }

    struct RunArgs
    {
        std::string config, preset, sweep, format = "csv", out = "-", channel;
        std::vector<std::string> schemes;
        std::vector<double> values;
        std::optional<int> trials, paths;
        std::optional<std::uint64_t> seed;
        bool timing = false;
    };

    struct ProbeArgs
    {
        std::string channel = "rayleigh", out = "-";
        std::vector<long> nt{32, 64, 128, 256, 512};
        int trials = 25, paths = 10, users = 2;
        std::uint64_t seed = 1;
    };

    int do_run(const RunArgs &a)
    {
        hbf::ExperimentSpec spec;
        if (!a.preset.empty())
            spec = hbf::preset(a.preset);
        if (!a.config.empty())
            spec = hbf::spec_from_json(read_file(a.config), spec);
        if (!a.schemes.empty())
        {
            spec.schemes.clear();
            for (const auto &s : a.schemes)
                spec.schemes.push_back(hbf::parse_scheme(s));
        }
        if (spec.schemes.empty())
            spec.schemes = hbf::all_schemes();
        if (!a.sweep.empty())
            spec.axis = hbf::parse_axis(a.sweep);
        if (!a.values.empty())
            spec.values = a.values;
        if (a.trials)
            spec.trials = *a.trials;
        if (a.seed)
            spec.seed = *a.seed;
        if (!a.channel.empty())
            spec.channel.model = hbf::parse_channel_model(a.channel);
        if (a.paths)
            spec.channel.paths = *a.paths;
        if (a.timing)
            spec.record_timing = true;
        hbf::OutputFormat format = hbf::parse_format(a.format);
        spec.validate();

        std::vector<hbf::SimRecord> records = hbf::run_experiment(spec);
        for (const auto &r : records)
            if (r.skipped)
                std::cerr << "skipped " << r.scheme << " at " << r.axis << "=" << r.sweep_value
                          << " trial " << r.trial << ": " << r.skip_reason << "\n";
        output(a.out, format == hbf::OutputFormat::csv ? hbf::to_csv(records) : hbf::to_json(records));
        return 0;
    }

    int do_probe(const ProbeArgs &a)
    {
        hbf::ScenarioParams sp;
        sp.users = a.users;
        hbf::ChannelSpec ch;
        ch.model = hbf::parse_channel_model(a.channel);
        ch.paths = a.paths;
        std::vector<hbf::Index> nt(a.nt.begin(), a.nt.end());
        auto rows = hbf::run_asymptotic_probe(sp, ch, nt, a.trials, a.seed);
        output(a.out, hbf::probe_to_csv(rows));
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Hybrid transceiver design for MIMO interference channels"};
    app.require_subcommand(1);

    RunArgs ra;
    CLI::App *run = app.add_subcommand("run", "Monte-Carlo sweep over one axis");
    run->add_option("--config", ra.config, "JSON experiment document");
    run->add_option("--preset", ra.preset, "full (100 trials) or desk (25 trials)");
    run->add_option("--scheme", ra.schemes, "Comma-separated scheme names")->delimiter(',');
    run->add_option("--sweep", ra.sweep, "snr_db, n_rf, n_t or k_users");
    run->add_option("--values", ra.values, "Comma-separated sweep values")->delimiter(',');
    run->add_option("--trials", ra.trials, "Channel draws per sweep value");
    run->add_option("--seed", ra.seed, "64-bit seed");
    run->add_option("--out", ra.out, "Output path, - for stdout");
    run->add_option("--format", ra.format, "csv or json");
    run->add_option("--channel", ra.channel, "rayleigh or mmwave");
    run->add_option("--paths", ra.paths, "mmWave path count");
    run->add_flag("--timing", ra.timing, "Record wall time per solve (output no longer reproducible)");

    ProbeArgs pa;
    CLI::App *probe = app.add_subcommand("probe", "Channel correlation and leakage versus Nt");
    probe->add_option("--channel", pa.channel, "rayleigh or mmwave");
    probe->add_option("--paths", pa.paths, "mmWave path count");
    probe->add_option("--nt", pa.nt, "Comma-separated increasing antenna counts")->delimiter(',');
    probe->add_option("--users", pa.users, "Transceiver pairs");
    probe->add_option("--trials", pa.trials, "Channel draws per antenna count");
    probe->add_option("--seed", pa.seed, "64-bit seed");
    probe->add_option("--out", pa.out, "Output path, - for stdout");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_invalid;
    }

    try
    {
        return run->parsed() ? do_run(ra) : do_probe(pa);
    }
    catch (const hbf::IoError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    catch (const hbf::Infeasible &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_infeasible;
    }
    catch (const hbf::InvalidInput &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
    catch (const hbf::InvalidDimension &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
