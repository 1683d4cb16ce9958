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

#include "cran/slot_result.hpp"

#include <cmath>
#include <stdexcept>

namespace cran
{

namespace
{

struct StrategyName
{
    StrategyKind kind;
    const char *name;
};

constexpr StrategyName kStrategyNames[] = {
    {StrategyKind::data_sharing, "data-sharing"},
    {StrategyKind::compression_adaptive, "compression-adaptive"},
    {StrategyKind::compression_fixed, "compression-fixed"},
    {StrategyKind::hybrid, "hybrid"},
    {StrategyKind::full_coop, "full-coop"},
    {StrategyKind::no_coop, "no-coop"},
};

} // namespace

const char *strategy_name(StrategyKind kind)
{
    for (const auto &s : kStrategyNames)
        if (s.kind == kind)
            return s.name;
    return "unknown";
}

StrategyKind parse_strategy(const std::string &name)
{
    for (const auto &s : kStrategyNames)
        if (name == s.name)
            return s.kind;
    throw std::invalid_argument("unknown strategy '" + name +
                                "' (data-sharing, compression-adaptive, compression-fixed, hybrid, full-coop, no-coop)");
}

Eigen::MatrixXd link_energy(const AntennaLayout &layout, const Beamformers &W)
{
    Eigen::MatrixXd E(layout.num_bs(), W.cols());
    for (int l = 0; l < layout.num_bs(); ++l)
        for (int k = 0; k < W.cols(); ++k)
            E(l, k) = W.block(layout.first[l], k, layout.count[l], 1).squaredNorm();
    return E;
}

Eigen::VectorXd link_thresholds(const SlotProblem &problem, double relative)
{
    Eigen::VectorXd t(problem.num_bs());
    for (int l = 0; l < problem.num_bs(); ++l)
        t(l) = relative * problem.power.segment(problem.layout.first[l], problem.layout.count[l]).maxCoeff();
    return t;
}

Beamformers threshold_links(const AntennaLayout &layout, Beamformers W, const Eigen::VectorXd &threshold)
{
    const Eigen::MatrixXd E = link_energy(layout, W);
    for (int l = 0; l < layout.num_bs(); ++l)
        for (int k = 0; k < W.cols(); ++k)
            if (E(l, k) <= threshold(l))
                W.block(layout.first[l], k, layout.count[l], 1).setZero();
    return W;
}

Eigen::VectorXd evaluate_rates(const SlotProblem &problem, const Beamformers &W, const Eigen::VectorXd &q)
{
    const Eigen::VectorXd sinr = all_sinr(problem.H_true, W, q, 1.0);
    Eigen::VectorXd r(sinr.size());
    for (int k = 0; k < sinr.size(); ++k)
        r(k) = rate_bps(sinr(k), problem.gamma_m, problem.bandwidth_hz);
    return r;
}

Eigen::VectorXd model_rates(const SlotProblem &problem, const Beamformers &W, const Eigen::VectorXd &q)
{
    const Eigen::VectorXd sinr = all_sinr(problem.H, W, q, 1.0);
    Eigen::VectorXd r(sinr.size());
    for (int k = 0; k < sinr.size(); ++k)
        r(k) = rate_bps(sinr(k), problem.gamma_m, problem.bandwidth_hz);
    return r;
}

Eigen::VectorXd backhaul_usage_exact(const AntennaLayout &layout, const Beamformers &W, const Eigen::VectorXd &rates,
                                     const Eigen::VectorXd &threshold)
{
    const Eigen::MatrixXd E = link_energy(layout, W);
    Eigen::VectorXd usage = Eigen::VectorXd::Zero(layout.num_bs());
    for (int l = 0; l < layout.num_bs(); ++l)
        for (int k = 0; k < W.cols(); ++k)
            if (E(l, k) > threshold(l))
                usage(l) += rates(k);
    return usage;
}

Eigen::VectorXd compression_usage(const SlotProblem &problem, const Beamformers &W, const Eigen::VectorXd &q)
{
    Eigen::VectorXd usage = Eigen::VectorXd::Zero(problem.num_bs());
    if (q.size() == 0)
        return usage;
    for (int i = 0; i < problem.num_antennas(); ++i)
    {
        const double s = W.row(i).squaredNorm();
        if (s == 0.0)
            continue;
        usage(problem.layout.bs_of_antenna[i]) +=
            problem.bandwidth_hz * std::log2(1.0 + problem.gamma_q * s / q(i));
    }
    return usage;
}

void finalize_rates(const SlotProblem &problem, SlotResult &result)
{
    result.rate_bps = evaluate_rates(problem, result.w, result.q);
    result.weighted_sum_rate_bps = problem.alpha.dot(result.rate_bps);
    const Eigen::MatrixXd E = link_energy(problem.layout, result.w);
    result.cluster = (E.array() > 0.0);
}

Feasibility check_feasibility(const SlotProblem &problem, const SlotResult &result)
{
    Feasibility f;
    const int T = problem.num_antennas();
    for (int i = 0; i < T; ++i)
    {
        double used = result.w.row(i).squaredNorm();
        if (result.q.size() != 0)
            used += result.q(i);
        f.power = std::max(f.power, (used - problem.power(i)) / problem.power(i));
    }

    // Every nonzero data link is charged, regardless of reporting thresholds.
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(problem.num_bs());
    Eigen::VectorXd usage = Eigen::VectorXd::Zero(problem.num_bs());
    if (result.w_data.size() != 0)
        usage += backhaul_usage_exact(problem.layout, result.w_data, result.rate_bps, zero);
    if (result.w_compressed.size() != 0 && result.q.size() != 0)
    {
        usage += compression_usage(problem, result.w_compressed, result.q);
        if (result.strategy != StrategyKind::hybrid)
            for (int i = 0; i < T; ++i)
            {
                const double s = result.w_compressed.row(i).squaredNorm();
                if (s == 0.0)
                    continue;
                const int l = problem.layout.bs_of_antenna[i];
                const double cap = problem.backhaul_bps(l) / problem.layout.count[l];
                if (std::isinf(cap))
                    continue;
                const double used = problem.bandwidth_hz * std::log2(1.0 + problem.gamma_q * s / result.q(i));
                f.fronthaul = std::max(f.fronthaul, (used - cap) / (cap > 0.0 ? cap : problem.bandwidth_hz));
            }
    }
    for (int l = 0; l < problem.num_bs(); ++l)
    {
        const double cap = problem.backhaul_bps(l);
        if (std::isinf(cap))
            continue;
        f.backhaul = std::max(f.backhaul, (usage(l) - cap) / (cap > 0.0 ? cap : problem.bandwidth_hz));
    }
    f.power = std::max(f.power, 0.0);
    f.backhaul = std::max(f.backhaul, 0.0);
    f.fronthaul = std::max(f.fronthaul, 0.0);
    return f;
}

} // namespace cran
