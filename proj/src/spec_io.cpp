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

#include <set>

namespace hbf
{
    namespace
    {
        using json = nlohmann::json;

        void check_keys(const json &o, const std::set<std::string> &allowed, const char *where)
        {
            if (!o.is_object())
                throw InvalidInput(std::string(where) + ": expected an object");
            for (auto it = o.begin(); it != o.end(); ++it)
                if (!allowed.count(it.key()))
                    throw InvalidInput(std::string(where) + ": unknown key '" + it.key() + "'");
        }

        template <class T>
        void read(const json &o, const char *key, T &out)
        {
            if (o.contains(key))
                out = o.at(key).get<T>();
        }
    }

    ExperimentSpec spec_from_json(const std::string &text, ExperimentSpec base)
    {
        ExperimentSpec spec = std::move(base);
        try
        {
            json doc = json::parse(text);
            check_keys(doc, {"schemes", "scenario", "channel", "sweep", "trials", "seed", "solver", "timing"},
                       "config");
            if (doc.contains("schemes"))
            {
                spec.schemes.clear();
                for (const auto &s : doc.at("schemes"))
                    spec.schemes.push_back(parse_scheme(s.get<std::string>()));
            }
            if (doc.contains("scenario"))
            {
                const json &s = doc.at("scenario");
                check_keys(s, {"users", "nt", "nr", "n_rf", "ns", "snr_db"}, "scenario");
                read(s, "users", spec.scenario.users);
                read(s, "nt", spec.scenario.nt);
                read(s, "nr", spec.scenario.nr);
                read(s, "n_rf", spec.scenario.n_rf);
                read(s, "ns", spec.scenario.ns);
                read(s, "snr_db", spec.scenario.snr_db);
            }
            if (doc.contains("channel"))
            {
                const json &c = doc.at("channel");
                check_keys(c, {"model", "paths"}, "channel");
                if (c.contains("model"))
                    spec.channel.model = parse_channel_model(c.at("model").get<std::string>());
                read(c, "paths", spec.channel.paths);
            }
            if (doc.contains("sweep"))
            {
                const json &s = doc.at("sweep");
                check_keys(s, {"axis", "values"}, "sweep");
                if (s.contains("axis"))
                    spec.axis = parse_axis(s.at("axis").get<std::string>());
                read(s, "values", spec.values);
            }
            read(doc, "trials", spec.trials);
            read(doc, "seed", spec.seed);
            read(doc, "timing", spec.record_timing);
            if (doc.contains("solver"))
            {
                const json &s = doc.at("solver");
                check_keys(s, {"eps_obj", "max_outer", "max_inner", "init", "fit_max_iter", "fit_eps"},
                           "solver");
                read(s, "eps_obj", spec.solver.eps_obj);
                read(s, "max_outer", spec.solver.max_outer);
                read(s, "max_inner", spec.solver.max_inner);
                read(s, "fit_max_iter", spec.solver.fit_max_iter);
                read(s, "fit_eps", spec.solver.fit_eps);
                if (s.contains("init"))
                {
                    std::string init = s.at("init").get<std::string>();
                    if (init == "two_stage_pp")
                        spec.solver.init = InitMode::two_stage_pp;
                    else if (init == "random_phase")
                        spec.solver.init = InitMode::random_phase;
                    else
                        throw InvalidInput("solver: unknown init '" + init + "'");
                }
            }
        }
        catch (const json::exception &e)
        {
            throw InvalidInput(std::string("config: ") + e.what());
        }
        return spec;
    }

    std::string spec_to_json(const ExperimentSpec &spec)
    {
        nlohmann::ordered_json doc;
        std::vector<std::string> schemes;
        for (Scheme s : spec.schemes)
            schemes.push_back(to_string(s));
        doc["schemes"] = schemes;
        doc["scenario"] = {{"users", spec.scenario.users}, {"nt", spec.scenario.nt},
                           {"nr", spec.scenario.nr},       {"n_rf", spec.scenario.n_rf},
                           {"ns", spec.scenario.ns},       {"snr_db", spec.scenario.snr_db}};
        doc["channel"] = {{"model", to_string(spec.channel.model)}, {"paths", spec.channel.paths}};
        doc["sweep"] = {{"axis", to_string(spec.axis)}, {"values", spec.values}};
        doc["trials"] = spec.trials;
        doc["seed"] = spec.seed;
        doc["solver"] = {{"eps_obj", spec.solver.eps_obj},
                         {"max_outer", spec.solver.max_outer},
                         {"max_inner", spec.solver.max_inner},
                         {"init", spec.solver.init == InitMode::two_stage_pp ? "two_stage_pp" : "random_phase"},
                         {"fit_max_iter", spec.solver.fit_max_iter},
                         {"fit_eps", spec.solver.fit_eps}};
        doc["timing"] = spec.record_timing;
        return doc.dump(2) + "\n";
    }

    ExperimentSpec preset(const std::string &name)
    {
        ExperimentSpec spec;
        spec.schemes = all_schemes();
        spec.axis = SweepAxis::snr_db;
        spec.values = {-10.0, -5.0, 0.0, 5.0, 10.0};
        if (name == "full")
            spec.trials = 100;
        else if (name == "desk")
            spec.trials = 25;
        else
            throw InvalidInput("unknown preset '" + name + "' (full, desk)");
        return spec;
    }
}
