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
#include "hbf/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hbf
{
    ChannelSet::ChannelSet(Index users) : users_(users), h_(std::size_t(users * users)) {}

    void ChannelSet::validate(const SystemConfig &config) const
    {
        if (users_ != config.users())
            throw InvalidDimension("ChannelSet: pair count does not match config");
        for (Index k = 0; k < users_; ++k)
            for (Index i = 0; i < users_; ++i)
            {
                const MatrixXcd &m = h(k, i);
                if (m.rows() != config[k].nr || m.cols() != config[i].nt)
                    throw InvalidDimension("ChannelSet: H(" + std::to_string(k) + "," +
                                           std::to_string(i) + ") has wrong shape");
                if (!m.allFinite())
                    throw InvalidInput("ChannelSet: H(" + std::to_string(k) + "," +
                                       std::to_string(i) + ") has non-finite entries");
            }
    }

    VectorXcd steering_vector(Index n, double angle)
    {
        if (n < 1)
            throw InvalidDimension("steering_vector: N must be >= 1");
        VectorXcd a(n);
        double s = std::sin(angle);
        double scale = 1.0 / std::sqrt(double(n));
        for (Index i = 0; i < n; ++i)
            a(i) = std::polar(scale, -std::numbers::pi * double(i) * s);
        return a;
    }

    ChannelSet gen_rayleigh(const SystemConfig &config, Rng &rng)
    {
        config.validate();
        Index K = config.users();
        ChannelSet ch(K);
        ch.model = ChannelModel::rayleigh;
        for (Index k = 0; k < K; ++k)
            for (Index i = 0; i < K; ++i)
            {
                MatrixXcd m(config[k].nr, config[i].nt);
                for (Index c = 0; c < m.cols(); ++c)
                    for (Index r = 0; r < m.rows(); ++r)
                        m(r, c) = rng.cnormal();
                ch.h(k, i) = std::move(m);
            }
        return ch;
    }

    ChannelSet gen_rayleigh(const SystemConfig &config, RngSpec spec)
    {
        Rng rng(spec);
        return gen_rayleigh(config, rng);
    }

    ChannelSet mmwave_from_clusters(const SystemConfig &config, std::vector<PathCluster> clusters)
    {
        Index K = config.users();
        if (Index(clusters.size()) != K * K)
            throw InvalidDimension("mmwave_from_clusters: need K*K path clusters");
        ChannelSet ch(K);
        ch.model = ChannelModel::mmwave;
        for (Index k = 0; k < K; ++k)
            for (Index i = 0; i < K; ++i)
            {
                const PathCluster &pc = clusters[std::size_t(k * K + i)];
                Index L = pc.paths();
                if (L < 1 || Index(pc.aoa.size()) != L || Index(pc.aod.size()) != L)
                    throw InvalidInput("mmwave_from_clusters: malformed path cluster");
                Index nr = config[k].nr, nt = config[i].nt;
                MatrixXcd m = MatrixXcd::Zero(nr, nt);
                for (Index l = 0; l < L; ++l)
                    m += pc.gain[std::size_t(l)] * steering_vector(nr, pc.aoa[std::size_t(l)]) *
                         steering_vector(nt, pc.aod[std::size_t(l)]).adjoint();
                m *= std::sqrt(double(nr * nt) / double(L));
                ch.h(k, i) = std::move(m);
            }
        ch.clusters = std::move(clusters);
        return ch;
    }

    ChannelSet gen_mmwave(const SystemConfig &config, Index paths, Rng &rng)
    {
        if (paths < 1)
            throw InvalidInput("gen_mmwave: path count must be >= 1");
        config.validate();
        Index K = config.users();
        std::vector<PathCluster> clusters(std::size_t(K * K));
        for (auto &pc : clusters)
            for (Index l = 0; l < paths; ++l)
            {
                pc.gain.push_back(rng.cnormal());
                pc.aoa.push_back(rng.angle());
                pc.aod.push_back(rng.angle());
            }
        return mmwave_from_clusters(config, std::move(clusters));
    }

    ChannelSet gen_mmwave(const SystemConfig &config, Index paths, RngSpec spec)
    {
        Rng rng(spec);
        return gen_mmwave(config, paths, rng);
    }

    MatrixXcd random_unit_modulus(Index rows, Index cols, Rng &rng)
    {
        if (rows < 1 || cols < 1)
            throw InvalidDimension("random_unit_modulus: rows and cols must be >= 1");
        MatrixXcd m(rows, cols);
        for (Index c = 0; c < cols; ++c)
            for (Index r = 0; r < rows; ++r)
                m(r, c) = std::polar(1.0, rng.angle());
        return m;
    }
}
