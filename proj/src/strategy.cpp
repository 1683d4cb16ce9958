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

#include "cran/strategy.hpp"

namespace cran
{

namespace
{

SlotResult power_only(const SlotProblem &problem, const BoolArray &pins, StrategyKind kind,
                      const StrategyOptions &options)
{
    const int T = problem.num_antennas();
    const int K = problem.num_users();
    SlotResult result;
    result.strategy = kind;

    WmmseLoop loop;
    loop.H = &problem.H;
    loop.alpha = problem.alpha;
    loop.gamma_m = problem.gamma_m;
    loop.max_iterations = options.baseline_max_iterations;
    loop.tolerance = options.baseline_tolerance;
    loop.build = [&](std::vector<HermitianForm> forms, const ReceiverState &) {
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
        return qp;
    };
    const WmmseLoopResult inner = run_wmmse_loop(loop, initial_beamformers(problem, pins), result.solver);
    result.w = inner.W;
    result.w_data = inner.W;
    result.wsr_traces.push_back(inner.wsr_trace);
    result.inner_iterations = inner.iterations;
    result.outer_iterations = 1;
    result.converged = inner.converged;
    finalize_rates(problem, result);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(problem.num_bs());
    result.backhaul_data_bps = backhaul_usage_exact(problem.layout, result.w, result.rate_bps, zero);
    result.backhaul_compression_bps = zero;
    result.modes = ModeMatrix::Constant(problem.num_bs(), K, LinkMode::off);
    for (int l = 0; l < problem.num_bs(); ++l)
        for (int k = 0; k < K; ++k)
            if (result.cluster(l, k))
                result.modes(l, k) = LinkMode::data;
    return result;
}

} // namespace

SlotResult optimize_full_cooperation(const SlotProblem &problem, const StrategyOptions &options)
{
    return power_only(problem, problem.csi_pins(), StrategyKind::full_coop, options);
}

SlotResult optimize_no_cooperation(const SlotProblem &problem, const StrategyOptions &options)
{
    BoolArray pins = BoolArray::Constant(problem.num_antennas(), problem.num_users(), true);
    for (int k = 0; k < problem.num_users(); ++k)
    {
        const int l = problem.strongest_bs[k];
        pins.block(problem.layout.first[l], k, problem.layout.count[l], 1).setConstant(false);
    }
    pins = pins || problem.csi_pins();
    return power_only(problem, pins, StrategyKind::no_coop, options);
}

SlotResult run_strategy(StrategyKind kind, const SlotProblem &problem, const StrategyOptions &options)
{
    switch (kind)
    {
    case StrategyKind::data_sharing:
        return optimize_data_sharing(problem, options.data_sharing);
    case StrategyKind::compression_adaptive:
        return optimize_compression_adaptive(problem, options.compression);
    case StrategyKind::compression_fixed:
        return optimize_compression_fixed(problem, options.compression);
    case StrategyKind::hybrid:
        return optimize_hybrid(problem, options.hybrid).result;
    case StrategyKind::full_coop:
        return optimize_full_cooperation(problem, options);
    case StrategyKind::no_coop:
        return optimize_no_cooperation(problem, options);
    }
    return {};
}

bool ignores_backhaul(StrategyKind kind)
{
    return kind == StrategyKind::full_coop || kind == StrategyKind::no_coop;
}

} // namespace cran
