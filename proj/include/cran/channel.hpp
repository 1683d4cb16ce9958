// SPDX-License-Identifier: Apache-2.0
//
// cran-bench: downlink C-RAN transmission strategy optimization
// Copyright (C) 2026 The cran-bench authors
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

#pragma once

#include "cran/config.hpp"
#include "cran/topology.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cran
{

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Column layout of the network-wide channel: BS l owns antennas
/// [first[l], first[l] + count[l]).
struct AntennaLayout
{
    std::vector<int> first;
    std::vector<int> count;
    std::vector<int> bs_of_antenna;

    int num_bs() const { return static_cast<int>(first.size()); }
    int num_antennas() const { return static_cast<int>(bs_of_antenna.size()); }
    bool single_antenna() const;

    static AntennaLayout from_topology(const Topology &topo);
    static AntennaLayout uniform(int num_bs, int antennas_per_bs);
    static AntennaLayout from_counts(const std::vector<int> &counts);
};

enum class FadingMode
{
    rayleigh,
    unit // fading coefficient fixed to 1; test hook for the large-scale model
};

/// One slot of channel state. H[k] is rx x total-antennas in linear amplitude
/// (sqrt of mW gain). csi_mask(k, l) == false means the optimizers must treat
/// the columns of BS l in H[k] as unknown.
struct ChannelRealization
{
    AntennaLayout layout;
    std::vector<Eigen::MatrixXcd> H;
    BoolArray csi_mask;              // users x BSs
    Eigen::MatrixXd avg_rx_power_mw; // users x BSs, large-scale gain times total BS power
    std::vector<int> strongest_bs;   // per user, by avg_rx_power_mw

    int num_users() const { return static_cast<int>(H.size()); }
    int num_rx() const { return H.empty() ? 0 : static_cast<int>(H.front().rows()); }
    bool full_csi() const { return csi_mask.all(); }

    /// H[k] with columns of BSs outside the user's CSI cluster zeroed.
    Eigen::MatrixXcd masked(int k) const;
};

/// Per-user CSI mask keeping the `cluster_size` strongest BSs (0 = all).
BoolArray strongest_bs_mask(const Eigen::MatrixXd &avg_rx_power, int cluster_size);

/// Draws slot `slot` of the channel process for a dropped topology. The draw
/// depends only on (cfg.rng_seed, slot), so strategies sharing a seed see the
/// same realizations.
ChannelRealization draw_channel(const Topology &topo, const NetworkConfig &cfg, std::uint64_t slot,
                                FadingMode fading = FadingMode::rayleigh);

/// Text dump used by regression tests. Lines:
///   cran-channel,1,<users>,<rx>,<bs>
///   bs,<l>,<first>,<count>
///   h,<k>,<row>,<col>,<re>,<im>
///   link,<k>,<l>,<csi 0|1>,<avg_rx_power_mw>
/// Doubles are printed with 17 significant digits so a load is bit-exact.
void write_channel_csv(std::ostream &os, const ChannelRealization &ch);
ChannelRealization read_channel_csv(std::istream &is);

} // namespace cran
