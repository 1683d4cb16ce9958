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

#include "cran/slot_problem.hpp"
#include "cran/wmmse.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace cran
{

enum class StrategyKind
{
    data_sharing,
    compression_adaptive,
    compression_fixed,
    hybrid,
    full_coop,
    no_coop
};

const char *strategy_name(StrategyKind kind);

/// Parses "data-sharing", "compression-adaptive", ...; throws std::invalid_argument.
StrategyKind parse_strategy(const std::string &name);

/// How BS l serves user k.
enum class LinkMode : char
{
    off = '-',
    data = 'd',
    compressed = 'c',
    both = 'b' // both components above threshold
};

using ModeMatrix = Eigen::Array<LinkMode, Eigen::Dynamic, Eigen::Dynamic>; // BSs x users

/// Outcome of one strategy on one slot. Beamformers and quantization noise are
/// in the normalized units of SlotProblem; rates and backhaul in bits/s.
struct SlotResult
{
    StrategyKind strategy = StrategyKind::data_sharing;
    Eigen::VectorXd rate_bps; // per user, evaluated on the true channel
    Beamformers w;
    Beamformers w_data;       // part carried as user messages (data-sharing, hybrid)
    Beamformers w_compressed; // part carried as compressed signal (compression, hybrid)
    Eigen::VectorXd q;        // per antenna quantization noise; empty when none
    Eigen::VectorXd backhaul_data_bps;        // per BS
    Eigen::VectorXd backhaul_compression_bps; // per BS
    BoolArray cluster;                        // BSs x users, true when BS l transmits to user k
    ModeMatrix modes;
    double weighted_sum_rate_bps = 0.0; // with the normalized PF weights
    std::vector<std::vector<double>> wsr_traces;
    int outer_iterations = 0;
    int inner_iterations = 0;
    bool converged = false;
    int repairs = 0;
    int mode_violations = 0;
    SolverStats solver;
    std::vector<std::string> warnings;

    double sum_rate_bps() const { return rate_bps.sum(); }
};

/// Largest relative constraint violations of a reported solution.
struct Feasibility
{
    double power = 0.0;    // max_i (sum_k |w_ki|^2 + q_i - P_i)_+ / P_i
    double backhaul = 0.0; // max_l (data + compression usage - C_l)_+ / C_l
    double fronthaul = 0.0; // per-antenna rate-distortion relation, compression strategies
};

Feasibility check_feasibility(const SlotProblem &problem, const SlotResult &result);

/// ||w_{l,k}||^2 for every BS and user.
Eigen::MatrixXd link_energy(const AntennaLayout &layout, const Beamformers &W);

/// Per-BS threshold 1e-6 times the per-antenna power (largest antenna of the BS).
Eigen::VectorXd link_thresholds(const SlotProblem &problem, double relative = 1e-6);

/// Zeroes w_{l,k} whenever ||w_{l,k}||^2 <= threshold(l).
Beamformers threshold_links(const AntennaLayout &layout, Beamformers W, const Eigen::VectorXd &threshold);

/// Per-user rates in bits/s on the true channel.
Eigen::VectorXd evaluate_rates(const SlotProblem &problem, const Beamformers &W, const Eigen::VectorXd &q);

/// Same on the channel seen by the optimizer.
Eigen::VectorXd model_rates(const SlotProblem &problem, const Beamformers &W, const Eigen::VectorXd &q);

/// Indicator accounting: BS l is charged R_k for every user with ||w_{l,k}||^2 > threshold(l).
Eigen::VectorXd backhaul_usage_exact(const AntennaLayout &layout, const Beamformers &W, const Eigen::VectorXd &rates,
                                     const Eigen::VectorXd &threshold);

/// sum over the antennas of BS l of bandwidth * log2(1 + gamma_q sum_k |w_ki|^2 / q_i).
Eigen::VectorXd compression_usage(const SlotProblem &problem, const Beamformers &W, const Eigen::VectorXd &q);

/// Fills rates, weighted sum rate and cluster membership from w and q.
void finalize_rates(const SlotProblem &problem, SlotResult &result);

} // namespace cran
