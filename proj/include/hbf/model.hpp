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

#ifndef HBF_MODEL_HPP
#define HBF_MODEL_HPP

#include "hbf/rng.hpp"

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace hbf
{
    using cd = std::complex<double>;
    using Eigen::Index;
    using Eigen::MatrixXcd;
    using Eigen::MatrixXd;
    using Eigen::VectorXcd;
    using Eigen::VectorXd;

    // One transmit-receive pair
    struct PairConfig
    {
        Index nt = 0, nr = 0;       // antennas
        Index nt_rf = 0, nr_rf = 0; // RF chains
        Index ns = 0;               // streams
        double power = 1.0;         // linear
        double noise = 1.0;         // linear noise variance
    };

    struct SystemConfig
    {
        std::vector<PairConfig> pairs;

        Index users() const { return Index(pairs.size()); }
        const PairConfig &operator[](Index k) const { return pairs[std::size_t(k)]; }
        PairConfig &operator[](Index k) { return pairs[std::size_t(k)]; }

        // Throws InvalidDimension / InvalidInput
        void validate() const;

        static SystemConfig uniform(Index users, Index nt, Index nr, Index n_rf, Index ns,
                                    double power, double noise = 1.0);
    };

    enum class ChannelModel
    {
        rayleigh,
        mmwave
    };

    struct PathCluster
    {
        std::vector<cd> gain;
        std::vector<double> aoa; // receive angles
        std::vector<double> aod; // transmit angles
        Index paths() const { return Index(gain.size()); }
    };

    // K x K grid; h(k, i) is the channel from transmitter i to receiver k (Nr_k x Nt_i)
    class ChannelSet
    {
    public:
        ChannelSet() = default;
        explicit ChannelSet(Index users);

        Index users() const { return users_; }
        const MatrixXcd &h(Index k, Index i) const { return h_[idx(k, i)]; }
        MatrixXcd &h(Index k, Index i) { return h_[idx(k, i)]; }

        ChannelModel model = ChannelModel::rayleigh;
        std::vector<PathCluster> clusters; // mmWave only, same (k, i) layout as h

        const PathCluster &cluster(Index k, Index i) const { return clusters[idx(k, i)]; }

        // Throws on shape mismatch or non-finite entries
        void validate(const SystemConfig &config) const;

    private:
        std::size_t idx(Index k, Index i) const { return std::size_t(k * users_ + i); }
        Index users_ = 0;
        std::vector<MatrixXcd> h_;
    };

    struct HybridPair
    {
        MatrixXcd fa; // Nt x NtRF, unit modulus
        MatrixXcd fd; // NtRF x Ns
        MatrixXcd ga; // Nr x NrRF, unit modulus
        MatrixXcd gd; // NrRF x Ns
        MatrixXcd w;  // Ns x Ns weight
    };

    struct HybridState
    {
        std::vector<HybridPair> pairs;
        Index users() const { return Index(pairs.size()); }
    };

    // ULA with half-wavelength spacing, unit norm
    VectorXcd steering_vector(Index n, double angle);

    ChannelSet gen_rayleigh(const SystemConfig &config, Rng &rng);
    ChannelSet gen_rayleigh(const SystemConfig &config, RngSpec spec);

    // Angles and gains drawn independently for every (k, i)
    ChannelSet gen_mmwave(const SystemConfig &config, Index paths, Rng &rng);
    ChannelSet gen_mmwave(const SystemConfig &config, Index paths, RngSpec spec);

    // Builds the channel grid from given clusters (k-major, K*K entries)
    ChannelSet mmwave_from_clusters(const SystemConfig &config, std::vector<PathCluster> clusters);

    MatrixXcd random_unit_modulus(Index rows, Index cols, Rng &rng);
}

#endif
