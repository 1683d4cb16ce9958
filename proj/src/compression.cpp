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

#include "cran/compression.hpp"

#include "cran/data_sharing.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cran
{

Eigen::VectorXd fronthaul_bits_per_symbol(const SlotProblem &problem)
{
    Eigen::VectorXd c(problem.num_antennas());
    for (int i = 0; i < problem.num_antennas(); ++i)
    {
        const int l = problem.layout.bs_of_antenna[i];
        c(i) = std::min(problem.backhaul_per_symbol(l) / problem.layout.count[l], kMaxQuantizerBits);
    }
    return c;
}

Eigen::VectorXd quantization_kappa(const SlotProblem &problem)
{
    const Eigen::VectorXd bits = fronthaul_bits_per_symbol(problem);
    Eigen::VectorXd kappa(bits.size());
    for (int i = 0; i < bits.size(); ++i)
        kappa(i) = bits(i) > 0.0 ? problem.gamma_q / std::expm1(bits(i) * std::log(2.0))
                                 : std::numeric_limits<double>::infinity();
    return kappa;
}

Eigen::VectorXd implied_quantization(const Beamformers &W, const Eigen::VectorXd &kappa)
{
    Eigen::VectorXd q(W.rows());
    for (int i = 0; i < W.rows(); ++i)
        q(i) = std::isinf(kappa(i)) ? 0.0 : kappa(i) * W.row(i).squaredNorm();
    return q;
}

QcqpProblem eliminate_quantization(std::vector<HermitianForm> forms, const Eigen::VectorXd &cost,
                                   const Eigen::VectorXd &kappa, const Eigen::VectorXd &power, BoolArray pins)
{
    const int T = static_cast<int>(power.size());
    const int K = static_cast<int>(forms.size());
    Eigen::VectorXd extra(T);
    for (int i = 0; i < T; ++i)
    {
        if (std::isinf(kappa(i)))
        {
            pins.row(i).setConstant(true);
            extra(i) = 0.0;
        }
        else
            extra(i) = cost(i) * kappa(i);
    }
    for (auto &f : forms)
        f.A.diagonal().array() += extra.array();

    QcqpProblem qp;
    qp.forms = std::move(forms);
    qp.pinned = std::move(pins);
    for (int i = 0; i < T; ++i)
    {
        QuadraticConstraint c;
        c.first = i;
        c.weights = Eigen::MatrixXd::Constant(1, K, std::isinf(kappa(i)) ? 1.0 : 1.0 + kappa(i));
        c.bound = power(i);
        c.kind = ConstraintKind::fronthaul;
        c.tag = i;
        qp.constraints.push_back(std::move(c));
    }
    return qp;
}

FixedQuantization fixed_quantization(const SlotProblem &problem)
{
    const Eigen::VectorXd bits = fronthaul_bits_per_symbol(problem);
    FixedQuantization f;
    f.q.resize(bits.size());
    f.budget.resize(bits.size());
    for (int i = 0; i < bits.size(); ++i)
    {
        const double levels = std::expm1(bits(i) * std::log(2.0)); // 2^C - 1
        const double P = problem.power(i);
        if (levels > problem.gamma_q)
        {
            f.q(i) = problem.gamma_q * P / levels;
            f.budget(i) = P - f.q(i);
        }
        else
        {
            f.q(i) = levels > 0.0 ? std::min(problem.gamma_q * P / levels, P) : P;
            f.budget(i) = 0.0;
            f.unusable.push_back(i);
        }
    }
    return f;
}

namespace
{

void fill_compression_result(const SlotProblem &problem, SlotResult &result)
{
    result.w_compressed = result.w;
    finalize_rates(problem, result);
    result.backhaul_data_bps = Eigen::VectorXd::Zero(problem.num_bs());
    result.backhaul_compression_bps = compression_usage(problem, result.w, result.q);
    result.modes = ModeMatrix::Constant(problem.num_bs(), problem.num_users(), LinkMode::off);
    for (int l = 0; l < problem.num_bs(); ++l)
        for (int k = 0; k < problem.num_users(); ++k)
            if (result.cluster(l, k))
                result.modes(l, k) = LinkMode::compressed;
}

} // namespace

SlotResult optimize_compression_adaptive(const SlotProblem &problem, const CompressionOptions &options)
{
    SlotResult result;
    result.strategy = StrategyKind::compression_adaptive;
    const Eigen::VectorXd kappa = quantization_kappa(problem);
    BoolArray pins = problem.csi_pins();
    for (int i = 0; i < problem.num_antennas(); ++i)
        if (std::isinf(kappa(i)))
            pins.row(i).setConstant(true);

    WmmseLoop loop;
    loop.H = &problem.H;
    loop.alpha = problem.alpha;
    loop.gamma_m = problem.gamma_m;
    loop.max_iterations = options.max_iterations;
    loop.tolerance = options.tolerance;
    loop.quantization = [&](const Beamformers &W) { return implied_quantization(W, kappa); };
    loop.build = [&](std::vector<HermitianForm> forms, const ReceiverState &rx) {
        const Eigen::VectorXd cost = quantization_cost(problem.H, rx, problem.alpha, problem.gamma_m);
        return eliminate_quantization(std::move(forms), cost, kappa, problem.power, pins);
    };
    const WmmseLoopResult inner = run_wmmse_loop(loop, initial_beamformers(problem, pins), result.solver);
    result.w = inner.W;
    result.q = implied_quantization(result.w, kappa);
    result.wsr_traces.push_back(inner.wsr_trace);
    result.inner_iterations = inner.iterations;
    result.outer_iterations = 1;
    result.converged = inner.converged;
    fill_compression_result(problem, result);
    return result;
}

SlotResult optimize_compression_fixed(const SlotProblem &problem, const CompressionOptions &options)
{
    SlotResult result;
    result.strategy = StrategyKind::compression_fixed;
    const FixedQuantization fq = fixed_quantization(problem);
    BoolArray pins = problem.csi_pins();
    for (int i : fq.unusable)
    {
        pins.row(i).setConstant(true);
        result.warnings.push_back("fronthaul below quantization floor at antenna " + std::to_string(i) + " (BS " +
                                  std::to_string(problem.layout.bs_of_antenna[i]) + ")");
    }
    const int K = problem.num_users();

    WmmseLoop loop;
    loop.H = &problem.H;
    loop.alpha = problem.alpha;
    loop.gamma_m = problem.gamma_m;
    loop.max_iterations = options.max_iterations;
    loop.tolerance = options.tolerance;
    loop.quantization = [&](const Beamformers &) { return fq.q; };
    loop.build = [&](std::vector<HermitianForm> forms, const ReceiverState &) {
        QcqpProblem qp;
        qp.forms = std::move(forms);
        qp.pinned = pins;
        for (int i = 0; i < problem.num_antennas(); ++i)
        {
            QuadraticConstraint c;
            c.first = i;
            c.weights = Eigen::MatrixXd::Ones(1, K);
            c.bound = fq.budget(i);
            c.kind = ConstraintKind::power;
            c.tag = i;
            qp.constraints.push_back(std::move(c));
        }
        return qp;
    };
    const WmmseLoopResult inner = run_wmmse_loop(loop, initial_beamformers(problem, pins), result.solver);
    result.w = inner.W;
    result.q = fq.q;
    result.wsr_traces.push_back(inner.wsr_trace);
    result.inner_iterations = inner.iterations;
    result.outer_iterations = 1;
    result.converged = inner.converged;
    fill_compression_result(problem, result);
    return result;
}

} // namespace cran
