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


#include "hbf/error.hpp"
#include "hbf/sim.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace hbf
{
    namespace
    {
        const char *csv_header =
            "scheme,sweep_axis,sweep_value,trial,seed,sum_rate_bits,outer_iterations,converged,wall_time_ms";

        std::string fmt(double v)
        {
            char buf[64];
            auto r = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, r.ptr);
        }

        template <class T>
        T parse_number(const std::string &s, const char *field)
        {
            T v{};
            auto r = std::from_chars(s.data(), s.data() + s.size(), v);
            if (r.ec != std::errc() || r.ptr != s.data() + s.size())
                throw InvalidInput(std::string("CSV: bad ") + field + " '" + s + "'");
            return v;
        }

        std::vector<std::string> split(const std::string &line)
        {
            std::vector<std::string> out;
            std::string cur;
            for (char c : line)
            {
                if (c == ',')
                {
                    out.push_back(cur);
                    cur.clear();
                }
                else
                    cur += c;
            }
            out.push_back(cur);
            return out;
        }
    }

    OutputFormat parse_format(const std::string &name)
    {
        if (name == "csv")
            return OutputFormat::csv;
        if (name == "json")
            return OutputFormat::json;
        throw InvalidInput("unknown output format '" + name + "'");
    }

    // Skipped records leave sum_rate_bits empty
    std::string to_csv(const std::vector<SimRecord> &records)
    {
        std::string out = csv_header;
        out += '\n';
        for (const SimRecord &r : records)
        {
            out += r.scheme + ',' + r.axis + ',' + fmt(r.sweep_value) + ',' + std::to_string(r.trial) + ',' +
                   std::to_string(r.seed) + ',' + (r.skipped ? "" : fmt(r.sum_rate_bits)) + ',' +
                   std::to_string(r.outer_iterations) + ',' + (r.converged ? "true" : "false") + ',' +
                   fmt(r.wall_time_ms) + '\n';
        }
        return out;
    }

    std::vector<SimRecord> parse_csv(const std::string &text)
    {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line != csv_header)
            throw InvalidInput("CSV: missing or unexpected header");
        std::vector<SimRecord> out;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            std::vector<std::string> f = split(line);
            if (f.size() != 9)
                throw InvalidInput("CSV: expected 9 fields in '" + line + "'");
            SimRecord r;
            r.scheme = f[0];
            r.axis = f[1];
            r.sweep_value = parse_number<double>(f[2], "sweep_value");
            r.trial = parse_number<int>(f[3], "trial");
            r.seed = parse_number<std::uint64_t>(f[4], "seed");
            if (f[5].empty())
                r.skipped = true;
            else
                r.sum_rate_bits = parse_number<double>(f[5], "sum_rate_bits");
            r.outer_iterations = parse_number<int>(f[6], "outer_iterations");
            if (f[7] != "true" && f[7] != "false")
                throw InvalidInput("CSV: bad converged flag '" + f[7] + "'");
            r.converged = f[7] == "true";
            r.wall_time_ms = parse_number<double>(f[8], "wall_time_ms");
            out.push_back(std::move(r));
        }
        return out;
    }

    std::string to_json(const std::vector<SimRecord> &records)
    {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const SimRecord &r : records)
        {
            nlohmann::ordered_json o;
            o["scheme"] = r.scheme;
            o["sweep_axis"] = r.axis;
            o["sweep_value"] = r.sweep_value;
            o["trial"] = r.trial;
            o["seed"] = r.seed;
            if (r.skipped)
                o["sum_rate_bits"] = nullptr;
            else
                o["sum_rate_bits"] = r.sum_rate_bits;
            o["per_pair_rates"] = r.per_pair_rates;
            o["outer_iterations"] = r.outer_iterations;
            o["converged"] = r.converged;
            o["wall_time_ms"] = r.wall_time_ms;
            o["skipped"] = r.skipped;
            if (r.skipped)
                o["skip_reason"] = r.skip_reason;
            arr.push_back(std::move(o));
        }
        return arr.dump(2) + "\n";
    }

    std::string probe_to_csv(const std::vector<ProbeRow> &rows)
    {
        std::string out = "n_t,correlation,leakage\n";
        for (const ProbeRow &r : rows)
            out += std::to_string(r.nt) + ',' + fmt(r.correlation) + ',' + fmt(r.leakage) + '\n';
        return out;
    }

    void write_file(const std::string &path, const std::string &content)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open '" + path + "' for writing");
        f.write(content.data(), std::streamsize(content.size()));
        f.close();
        if (!f)
            throw IoError("failed writing '" + path + "'");
    }

    void emit(const std::vector<SimRecord> &records, const std::string &path, OutputFormat format)
    {
        write_file(path, format == OutputFormat::csv ? to_csv(records) : to_json(records));
    }
}
