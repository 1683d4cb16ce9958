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

#include "cran/slot_result.hpp"

#include <optional>

namespace cran
{

struct HybridOptions
{
    int max_outer = 20;
    int max_inner = 50;
    double tolerance = 1e-4;
    int warm_start_outer = 3;           // data-sharing outer iterations used to seed w_d
    double threshold_relative = 1e-6;   // data-link threshold for backhaul accounting
    double mode_threshold_relative = 1e-4;
    double q_floor_relative = 1e-12;
};

/// Single-antenna BSs and users: all matrices are BSs x users.
struct HybridState
{
    Beamformers w;
    Beamformers w_c;
    Beamformers w_d;
    Eigen::VectorXd q;
    Eigen::VectorXd gamma;
    Eigen::MatrixXd beta_d;
    Eigen::VectorXd rho;
    Eigen::VectorXd r_hat_bps;
    Eigen::VectorXd multipliers; // of the last convex step, reused as a warm start
};

/// Which components each (BS, user) pair may use, per-BS fixed values of q,
/// and the fraction of each backhaul capacity the convex step may plan for.
struct HybridRestriction
{
    BoolArray allow_data;
    BoolArray allow_compression;
    std::vector<std::optional<double>> q_fixed; // empty or one entry per BS
    double backhaul_scale = 1.0;

    static HybridRestriction unrestricted(int num_bs, int num_users);
};

/// Convex backhaul constraint (nats per channel use) around the current point:
///   sum_k data_weight(l,k) |w^d_{l,k}|^2 + compression_weight(l) sum_k |w^c_{l,k}|^2
///     + gamma_l q_l - log q_l <= bound(l),
/// with data_weight = beta_d * r_hat, compression_weight = gamma_l * gamma_q and
/// bound = C_l + log(gamma_l) + 1.
struct BackhaulLinearization
{
    Eigen::MatrixXd data_weight;
    Eigen::VectorXd compression_weight;
    Eigen::VectorXd gamma;
    Eigen::VectorXd bound;
};

/// Uses state.gamma as the linearization point of the compression term.
BackhaulLinearization linearize_backhaul(const SlotProblem &problem, const HybridState &state);

/// gamma_l = 1 / (gamma_q sum_k |w^c_{l,k}|^2 + q_l).
Eigen::VectorXd tangent_gamma(const HybridState &state, double gamma_q);

/// Compression part of the convex surrogate in nats:
///   gamma (gamma_q s + q) - log(gamma) - 1 - log(q),  s = sum_k |w^c_k|^2.
double compression_surrogate(double gamma, double gamma_q, double s, double q);

/// Exact compression rate log(1 + gamma_q s / q) in nats.
double compression_rate_nats(double gamma_q, double s, double q);

/// Per-(BS, user) mode with threshold eps(l); counts pairs where both parts exceed it.
ModeMatrix check_mode_exclusivity(const HybridState &state, const Eigen::VectorXd &eps, int *violations = nullptr);

/// One pass of receiver, MSE weight and gamma updates followed by the convex
/// step over (w, w_c, w_d, q). beta_d and r_hat are held fixed.
HybridState hybrid_inner_step(const SlotProblem &problem, HybridState state, const HybridRestriction &restriction,
                              double q_floor_relative, SolverStats &stats);

struct HybridOutcome
{
    HybridState state;
    SlotResult result;
};

/// Throws std::invalid_argument unless every BS and user has a single antenna.
HybridOutcome optimize_hybrid(const SlotProblem &problem, const HybridOptions &options = {});

} // namespace cran
