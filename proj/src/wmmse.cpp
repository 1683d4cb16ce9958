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

#include "cran/wmmse.hpp"

#include "cran/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cran
{

namespace
{

void check_dims(const Eigen::MatrixXcd &Hk, const Beamformers &W, int k, const Eigen::VectorXd &q)
{
    if (Hk.cols() != W.rows())
        throw std::invalid_argument("channel/beamformer dimension mismatch");
    if (k < 0 || k >= W.cols())
        throw std::invalid_argument("user index out of range");
    if (q.size() != 0 && q.size() != Hk.cols())
        throw std::invalid_argument("quantization noise dimension mismatch");
}

} // namespace

Eigen::MatrixXcd interference_covariance(const Eigen::MatrixXcd &Hk, const Beamformers &W, int k,
                                         const Eigen::VectorXd &q, double noise)
{
    check_dims(Hk, W, k, q);
    const Eigen::MatrixXcd HW = Hk * W;
    Eigen::MatrixXcd J = HW * HW.adjoint() - HW.col(k) * HW.col(k).adjoint();
    J.diagonal().array() += noise;
    if (q.size() != 0)
        J += Hk * q.cast<std::complex<double>>().asDiagonal() * Hk.adjoint();
    return 0.5 * (J + J.adjoint());
}

double compute_sinr(const Eigen::MatrixXcd &Hk, const Beamformers &W, int k, const Eigen::VectorXd &q, double noise)
{
    const Eigen::MatrixXcd J = interference_covariance(Hk, W, k, q, noise);
    const Eigen::VectorXcd s = Hk * W.col(k);
    if (s.squaredNorm() == 0.0)
        return 0.0;
    return std::max(0.0, s.dot(solve_hpd(J, s)).real());
}

double rate_bps(double sinr, double gamma_m, double bandwidth)
{
    return bandwidth * std::log2(1.0 + sinr / gamma_m);
}

MmseReceiver mmse_receiver(const Eigen::MatrixXcd &Hk, const Beamformers &W, int k, const Eigen::VectorXd &q,
                           double noise, double gamma_m)
{
    const Eigen::VectorXcd s = Hk * W.col(k);
    Eigen::MatrixXcd V = gamma_m * interference_covariance(Hk, W, k, q, noise) + s * s.adjoint();
    MmseReceiver r;
    r.u = solve_hpd(V, s);
    // e = 1 - s^H V^{-1} s, clamped into (0, 1] against roundoff.
    r.e = std::clamp(1.0 - s.dot(r.u).real(), std::numeric_limits<double>::min(), 1.0);
    return r;
}

ReceiverState update_receivers(const std::vector<Eigen::MatrixXcd> &H, const Beamformers &W, const Eigen::VectorXd &q,
                               double noise, double gamma_m)
{
    const int K = static_cast<int>(H.size());
    ReceiverState rx;
    rx.u.resize(static_cast<std::size_t>(K));
    rx.e.resize(K);
    rx.rho.resize(K);
    for (int k = 0; k < K; ++k)
    {
        const MmseReceiver r = mmse_receiver(H[k], W, k, q, noise, gamma_m);
        rx.u[k] = r.u;
        rx.e(k) = r.e;
        rx.rho(k) = 1.0 / r.e;
    }
    return rx;
}

std::vector<HermitianForm> assemble_forms(const std::vector<Eigen::MatrixXcd> &H, const ReceiverState &rx,
                                          const Eigen::VectorXd &alpha, double gamma_m)
{
    const int K = static_cast<int>(H.size());
    const int T = K > 0 ? static_cast<int>(H.front().cols()) : 0;
    Eigen::MatrixXcd G(T, K);
    for (int k = 0; k < K; ++k)
        G.col(k) = H[k].adjoint() * rx.u[k];
    const Eigen::VectorXd c = (alpha.array() * rx.rho.array()).matrix();
    // Common part gamma_m * sum_j c_j g_j g_j^H, then correct the own term.
    const Eigen::MatrixXcd common = gamma_m * G * c.cast<std::complex<double>>().asDiagonal() * G.adjoint();
    std::vector<HermitianForm> forms(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
    {
        forms[k].A = common - (gamma_m - 1.0) * c(k) * G.col(k) * G.col(k).adjoint();
        forms[k].A = 0.5 * (forms[k].A + forms[k].A.adjoint()).eval();
        forms[k].b = 2.0 * c(k) * G.col(k);
    }
    return forms;
}

Eigen::VectorXd quantization_cost(const std::vector<Eigen::MatrixXcd> &H, const ReceiverState &rx,
                                  const Eigen::VectorXd &alpha, double gamma_m)
{
    const int K = static_cast<int>(H.size());
    const int T = K > 0 ? static_cast<int>(H.front().cols()) : 0;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(T);
    for (int k = 0; k < K; ++k)
        c += gamma_m * alpha(k) * rx.rho(k) * (H[k].adjoint() * rx.u[k]).cwiseAbs2();
    return c;
}

double wmmse_objective(const std::vector<Eigen::MatrixXcd> &H, const Beamformers &W, const Eigen::VectorXd &q,
                       double noise, double gamma_m, const ReceiverState &rx, const Eigen::VectorXd &alpha)
{
    double f = 0.0;
    for (int k = 0; k < static_cast<int>(H.size()); ++k)
    {
        const Eigen::VectorXcd s = H[k] * W.col(k);
        const Eigen::MatrixXcd V = gamma_m * interference_covariance(H[k], W, k, q, noise) + s * s.adjoint();
        const Eigen::VectorXcd &u = rx.u[k];
        const double e = u.dot(V * u).real() - 2.0 * u.dot(s).real() + 1.0;
        f += alpha(k) * (rx.rho(k) * e - std::log(rx.rho(k)));
    }
    return f;
}

Eigen::VectorXd all_sinr(const std::vector<Eigen::MatrixXcd> &H, const Beamformers &W, const Eigen::VectorXd &q,
                         double noise)
{
    Eigen::VectorXd s(static_cast<Eigen::Index>(H.size()));
    for (int k = 0; k < static_cast<int>(H.size()); ++k)
        s(k) = compute_sinr(H[k], W, k, q, noise);
    return s;
}

double weighted_sum_rate(const std::vector<Eigen::MatrixXcd> &H, const Beamformers &W, const Eigen::VectorXd &q,
                         double noise, double gamma_m, const Eigen::VectorXd &alpha)
{
    const Eigen::VectorXd s = all_sinr(H, W, q, noise);
    double f = 0.0;
    for (int k = 0; k < s.size(); ++k)
        f += alpha(k) * std::log2(1.0 + s(k) / gamma_m);
    return f;
}

void SolverStats::record(const QcqpSolution &s)
{
    ++qcqp_solves;
    qcqp_unconverged += s.converged ? 0 : 1;
    dual_iterations += s.iterations;
    max_stationarity = std::max(max_stationarity, s.stationarity);
    max_violation = std::max(max_violation, s.max_violation);
    max_complementarity = std::max(max_complementarity, s.complementarity);
}

void SolverStats::merge(const SolverStats &o)
{
    qcqp_solves += o.qcqp_solves;
    qcqp_unconverged += o.qcqp_unconverged;
    dual_iterations += o.dual_iterations;
    max_stationarity = std::max(max_stationarity, o.max_stationarity);
    max_violation = std::max(max_violation, o.max_violation);
    max_complementarity = std::max(max_complementarity, o.max_complementarity);
}

WmmseLoopResult run_wmmse_loop(const WmmseLoop &loop, Beamformers W, SolverStats &stats)
{
    const auto &H = *loop.H;
    WmmseLoopResult out;
    Eigen::VectorXd multipliers;
    auto quantization = [&](const Beamformers &X) {
        return loop.quantization ? loop.quantization(X) : Eigen::VectorXd();
    };
    for (int it = 0; it < loop.max_iterations; ++it)
    {
        const ReceiverState rx = update_receivers(H, W, quantization(W), loop.noise, loop.gamma_m);
        const QcqpProblem problem = loop.build(assemble_forms(H, rx, loop.alpha, loop.gamma_m), rx);
        QcqpOptions opt;
        if (multipliers.size() == static_cast<Eigen::Index>(problem.constraints.size()))
            opt.warm_start = &multipliers;
        const QcqpSolution sol = solve_qcqp(problem, opt);
        stats.record(sol);
        ++out.iterations;
        if (!sol.converged && sol.max_violation > 1e-6)
            break; // keep the last feasible iterate
        multipliers = sol.multipliers;
        W = sol.w;
        const double wsr = weighted_sum_rate(H, W, quantization(W), loop.noise, loop.gamma_m, loop.alpha);
        const bool settled =
            !out.wsr_trace.empty() && std::abs(wsr - out.wsr_trace.back()) <= loop.tolerance * std::abs(wsr);
        out.wsr_trace.push_back(wsr);
        if (settled)
        {
            out.converged = true;
            break;
        }
    }
    out.W = std::move(W);
    return out;
}

} // namespace cran
