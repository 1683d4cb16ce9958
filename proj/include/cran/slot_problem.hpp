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

#include "cran/channel.hpp"
#include "cran/config.hpp"
#include "cran/topology.hpp"

#include <Eigen/Dense>

#include <vector>

namespace cran
{

/// One scheduling slot in normalized units: noise power 1, transmit powers
/// divided by the largest per-antenna power, channels scaled to match, and
/// PF weights divided by their maximum. Rates remain in bits/s.
struct SlotProblem
{
    AntennaLayout layout;
    std::vector<Eigen::MatrixXcd> H;      // what the optimizers see (CSI-masked)
    std::vector<Eigen::MatrixXcd> H_true; // used to evaluate reported rates
    BoolArray csi;                        // users x BSs
    Eigen::VectorXd power;                // per antenna
    Eigen::VectorXd backhaul_bps;         // per BS, may be +inf
    Eigen::VectorXd alpha;                // per user
    std::vector<int> strongest_bs;
    double gamma_m = 1.0;
    double gamma_q = 1.0;
    double bandwidth_hz = 1.0;
    double power_ref_mw = 1.0; // physical power of one normalized unit

    int num_users() const { return static_cast<int>(H.size()); }
    int num_antennas() const { return layout.num_antennas(); }
    int num_bs() const { return layout.num_bs(); }

    /// Regularizer of the cluster weights: 1e-10 times the largest antenna power.
    double tau() const { return 1e-10 * power.maxCoeff(); }

    /// Antennas x users, true where the user's channel to that BS is unknown.
    BoolArray csi_pins() const;

    /// Backhaul of BS l in bits per channel use.
    double backhaul_per_symbol(int l) const { return backhaul_bps(l) / bandwidth_hz; }
};

SlotProblem make_slot_problem(const ChannelRealization &ch, const Topology &topo, const NetworkConfig &cfg,
                              const Eigen::VectorXd &alpha);

/// Problem already in normalized units with full CSI; the strongest BS of a
/// user is the one with the largest channel energy.
SlotProblem make_normalized_problem(const AntennaLayout &layout, std::vector<Eigen::MatrixXcd> H,
                                    Eigen::VectorXd power, Eigen::VectorXd backhaul_bps, Eigen::VectorXd alpha,
                                    double gamma_m, double gamma_q, double bandwidth_hz);

} // namespace cran
