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

#include "cran/data_sharing.hpp"

#include <cmath>
#include <limits>

namespace cran
{

Eigen::MatrixXd update_cluster_weights(const AntennaLayout &layout, const Beamformers &W, double tau)
{
    return (link_energy(layout, W).array() + tau).inverse().matrix();
}

Beamformers initial_beamformers(const SlotProblem &problem, const BoolArray &pins)
{
    const int T = problem.num_antennas();
    const int K = problem.num_users();
    Beamformers W = Beamformers::Zero(T, K);
    // Dominant right singular vector of H_k gives the matched-filter phase.
    Eigen::MatrixXcd direction(T, K);
    for (int k = 0; k < K; ++k)
    {
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(problem.H[k], Eigen::ComputeThinV);
        direction.col(k) = svd.matrixV().col(0);
    }
    for (int i = 0; i < T; ++i)
    {
        const int served = static_cast<int>((!pins.row(i)).count());
        if (served == 0)
            continue;
        const double amplitude = std::sqrt(problem.power(i) / served);
        for (int k = 0; k < K; ++k)
        {
            if (pins(i, k))
                continue;
            const std::complex<double> v = direction(i, k);
            W(i, k) = std::abs(v) > 0.0 ? amplitude * v / std::abs(v) : amplitude;
        }
    }
    return W;
}

namespace
{

constexpr double kUsageTolerance = 1e-9;
constexpr int kPolishRounds = 3;
constexpr double kPolishMargin[kPolishRounds] = {1e-3, 4e-3, 1.6e-2};

struct DataSharingLoop
{
    const SlotProblem &problem;
    BoolArray pins;
    Eigen::MatrixXd beta;  // BSs x users
    Eigen::VectorXd r_hat; // bits/s
    double bound_scale = 1.0;

    QcqpProblem build(std::vector<HermitianForm> forms) const
    {
        const int T = problem.num_antennas();
        const int K = problem.num_users();
        QcqpProblem qp;
        qp.forms = std::move(forms);
        qp.pinned = pins;
        for (int i = 0; i < T; ++i)
        {
            QuadraticConstraint c;
            c.first = i;
            c.weights = Eigen::MatrixXd::Ones(1, K);
            c.bound = problem.power(i);
            c.kind = ConstraintKind::power;
            c.tag = i;
            qp.constraints.push_back(std::move(c));
        }
        for (int l = 0; l < problem.num_bs(); ++l)
        {
            QuadraticConstraint c;
            c.first = problem.layout.first[l];
            c.weights.resize(problem.layout.count[l], K);
            for (int k = 0; k < K; ++k)
                c.weights.col(k).setConstant(beta(l, k) * r_hat(k) / problem.bandwidth_hz);
            c.bound = bound_scale * problem.backhaul_per_symbol(l);
            c.kind = ConstraintKind::backhaul;
            c.tag = l;
            qp.constraints.push_back(std::move(c));
        }
        return qp;
    }

    WmmseLoopResult run(const Beamformers &W, int max_inner, double tolerance, SolverStats &stats) const
    {
        WmmseLoop loop;
        loop.H = &problem.H;
        loop.alpha = problem.alpha;
        loop.gamma_m = problem.gamma_m;
        loop.max_iterations = max_inner;
        loop.tolerance = tolerance;
        loop.build = [this](std::vector<HermitianForm> forms, const ReceiverState &) { return build(std::move(forms)); };
        return run_wmmse_loop(loop, W, stats);
    }
};

void zero_pinned(Beamformers &W, const BoolArray &pins)
{
    for (int i = 0; i < W.rows(); ++i)
        for (int k = 0; k < W.cols(); ++k)
            if (pins(i, k))
                W(i, k) = 0.0;
}

} // namespace

SlotResult optimize_data_sharing(const SlotProblem &problem, const DataSharingOptions &options)
{
    const int K = problem.num_users();
    const auto &layout = problem.layout;
    SlotResult result;
    result.strategy = StrategyKind::data_sharing;

    DataSharingLoop loop{problem, problem.csi_pins(), {}, {}};
    for (int l = 0; l < problem.num_bs(); ++l)
        if (problem.backhaul_bps(l) == 0.0)
            loop.pins.middleRows(layout.first[l], layout.count[l]).setConstant(true);

    const double tau = problem.tau();
    const Eigen::VectorXd no_q;
    Beamformers W = initial_beamformers(problem, loop.pins);
    loop.r_hat = model_rates(problem, W, no_q);
    loop.beta = update_cluster_weights(layout, W, tau);

    double previous = -std::numeric_limits<double>::infinity();
    for (int outer = 0; outer < options.max_outer; ++outer)
    {
        const WmmseLoopResult inner = loop.run(W, options.max_inner, options.tolerance, result.solver);
        W = inner.W;
        result.wsr_traces.push_back(inner.wsr_trace);
        result.inner_iterations += inner.iterations;
        ++result.outer_iterations;
        loop.r_hat = model_rates(problem, W, no_q);
        loop.beta = update_cluster_weights(layout, W, tau);
        const double wsr = inner.wsr_trace.empty() ? previous : inner.wsr_trace.back();
        if (std::abs(wsr - previous) <= options.tolerance * std::abs(wsr))
        {
            result.converged = true;
            break;
        }
        previous = wsr;
    }

    // Threshold and account exactly. A violation left by the lag of the rate
    // estimates is first absorbed by re-solving against a slightly reduced
    // bound; persistent violations drop the weakest membership at every
    // over-committed BS.
    const Eigen::VectorXd threshold = link_thresholds(problem, options.threshold_relative);
    int polish = 0;
    while (options.enforce_exact)
    {
        W = threshold_links(layout, W, threshold);
        const Eigen::VectorXd rates = evaluate_rates(problem, W, no_q);
        const Eigen::VectorXd usage = backhaul_usage_exact(layout, W, rates, threshold);
        const Eigen::MatrixXd energy = link_energy(layout, W);
        std::vector<int> violating;
        for (int l = 0; l < problem.num_bs(); ++l)
            if (usage(l) > problem.backhaul_bps(l) * (1.0 + kUsageTolerance))
                violating.push_back(l);
        if (violating.empty())
            break;
        if (polish < kPolishRounds)
            loop.bound_scale = 1.0 - kPolishMargin[polish++];
        else
        {
            ++result.repairs;
            for (int l : violating)
            {
                int weakest = -1;
                double smallest = std::numeric_limits<double>::infinity();
                for (int k = 0; k < K; ++k)
                    if (energy(l, k) > 0.0 && energy(l, k) * rates(k) < smallest)
                    {
                        smallest = energy(l, k) * rates(k);
                        weakest = k;
                    }
                loop.pins.block(layout.first[l], weakest, layout.count[l], 1).setConstant(true);
            }
            zero_pinned(W, loop.pins);
        }
        loop.r_hat = model_rates(problem, W, no_q);
        loop.beta = update_cluster_weights(layout, W, tau);
        const WmmseLoopResult inner = loop.run(W, options.max_inner, options.tolerance, result.solver);
        W = inner.W;
        result.wsr_traces.push_back(inner.wsr_trace);
        result.inner_iterations += inner.iterations;
    }

    result.w = W;
    result.w_data = W;
    finalize_rates(problem, result);
    result.backhaul_data_bps = backhaul_usage_exact(layout, W, result.rate_bps, threshold);
    result.backhaul_compression_bps = Eigen::VectorXd::Zero(problem.num_bs());
    result.modes = ModeMatrix::Constant(problem.num_bs(), K, LinkMode::off);
    for (int l = 0; l < problem.num_bs(); ++l)
        for (int k = 0; k < K; ++k)
            if (result.cluster(l, k))
                result.modes(l, k) = LinkMode::data;
    return result;
}

} // namespace cran
