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

#include "cran/qcqp.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace cran
{

/// Network-wide beamformers: column k is w_k over all transmit antennas.
using Beamformers = Eigen::MatrixXcd;

/// Interference-plus-noise covariance seen by user k:
///   sum_{j != k} H_k w_j w_j^H H_k^H + noise I + H_k diag(q) H_k^H.
/// An empty q means no quantization noise.
Eigen::MatrixXcd interference_covariance(const Eigen::MatrixXcd &Hk, const Beamformers &W, int k,
                                         const Eigen::VectorXd &q, double noise);

/// SINR_k = w_k^H H_k^H J_k^{-1} H_k w_k. Throws std::invalid_argument on
/// inconsistent dimensions.
double compute_sinr(const Eigen::MatrixXcd &Hk, const Beamformers &W, int k, const Eigen::VectorXd &q, double noise);

/// bandwidth * log2(1 + sinr / gamma_m).
double rate_bps(double sinr, double gamma_m, double bandwidth);

struct MmseReceiver
{
    Eigen::VectorXcd u;
    double e = 1.0;
};

/// u_k = V_k^{-1} H_k w_k with V_k = gamma_m J_k + H_k w_k w_k^H H_k^H, and the
/// resulting mean squared error e_k = 1 / (1 + SINR_k / gamma_m).
MmseReceiver mmse_receiver(const Eigen::MatrixXcd &Hk, const Beamformers &W, int k, const Eigen::VectorXd &q,
                           double noise, double gamma_m);

struct ReceiverState
{
    std::vector<Eigen::VectorXcd> u;
    Eigen::VectorXd e;
    Eigen::VectorXd rho; // 1 / e
};

ReceiverState update_receivers(const std::vector<Eigen::MatrixXcd> &H, const Beamformers &W, const Eigen::VectorXd &q,
                               double noise, double gamma_m);

/// A_k = sum_{j != k} alpha_j rho_j gamma_m g_j g_j^H + alpha_k rho_k g_k g_k^H,
/// b_k = 2 alpha_k rho_k g_k, with g_j = H_j^H u_j.
std::vector<HermitianForm> assemble_forms(const std::vector<Eigen::MatrixXcd> &H, const ReceiverState &rx,
                                          const Eigen::VectorXd &alpha, double gamma_m);

/// Per-antenna price of quantization noise in the WMMSE objective:
///   c_i = sum_k gamma_m alpha_k rho_k |(H_k^H u_k)_i|^2.
Eigen::VectorXd quantization_cost(const std::vector<Eigen::MatrixXcd> &H, const ReceiverState &rx,
                                  const Eigen::VectorXd &alpha, double gamma_m);

/// WMMSE objective sum_k alpha_k (rho_k e_k - log rho_k) evaluated at (W, q)
/// for fixed receivers and weights (natural log).
double wmmse_objective(const std::vector<Eigen::MatrixXcd> &H, const Beamformers &W, const Eigen::VectorXd &q,
                       double noise, double gamma_m, const ReceiverState &rx, const Eigen::VectorXd &alpha);

/// Per-user SINR for all users.
Eigen::VectorXd all_sinr(const std::vector<Eigen::MatrixXcd> &H, const Beamformers &W, const Eigen::VectorXd &q,
                         double noise);

/// sum_k alpha_k log2(1 + SINR_k / gamma_m), bits per channel use.
double weighted_sum_rate(const std::vector<Eigen::MatrixXcd> &H, const Beamformers &W, const Eigen::VectorXd &q,
                         double noise, double gamma_m, const Eigen::VectorXd &alpha);

/// Aggregated convex-subproblem diagnostics over all solves of one optimizer run.
struct SolverStats
{
    int qcqp_solves = 0;
    int qcqp_unconverged = 0;
    int dual_iterations = 0;
    double max_stationarity = 0.0;
    double max_violation = 0.0;
    double max_complementarity = 0.0;

    void record(const QcqpSolution &s);
    void merge(const SolverStats &other);
};

/// One block-coordinate WMMSE loop with fixed constraint data. `build`
/// turns the current forms, receivers and beamformers into the convex
/// subproblem; `quantization` maps beamformers to per-antenna quantization
/// noise (empty result = none).
struct WmmseLoop
{
    const std::vector<Eigen::MatrixXcd> *H = nullptr;
    Eigen::VectorXd alpha;
    double gamma_m = 1.0;
    double noise = 1.0;
    int max_iterations = 100;
    double tolerance = 1e-4;
    std::function<Eigen::VectorXd(const Beamformers &)> quantization;
    std::function<QcqpProblem(std::vector<HermitianForm> forms, const ReceiverState &rx)> build;
};

struct WmmseLoopResult
{
    Beamformers W;
    // Weighted sum rate after each beamformer update; the first entry is the
    // output of the first convex step.
    std::vector<double> wsr_trace;
    int iterations = 0;
    bool converged = false;
};

WmmseLoopResult run_wmmse_loop(const WmmseLoop &loop, Beamformers W, SolverStats &stats);

} // namespace cran
