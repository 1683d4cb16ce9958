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

#include "cran/hybrid.hpp"

#include "cran/compression.hpp"
#include "cran/data_sharing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cran
{

HybridRestriction HybridRestriction::unrestricted(int num_bs, int num_users)
{
    return {BoolArray::Constant(num_bs, num_users, true), BoolArray::Constant(num_bs, num_users, true),
            std::vector<std::optional<double>>(static_cast<std::size_t>(num_bs)), 1.0};
}

Eigen::VectorXd tangent_gamma(const HybridState &state, double gamma_q)
{
    return (gamma_q * state.w_c.rowwise().squaredNorm() + state.q).cwiseInverse();
}

double compression_surrogate(double gamma, double gamma_q, double s, double q)
{
    return gamma * (gamma_q * s + q) - std::log(gamma) - 1.0 - std::log(q);
}

double compression_rate_nats(double gamma_q, double s, double q)
{
    return std::log1p(gamma_q * s / q);
}

BackhaulLinearization linearize_backhaul(const SlotProblem &problem, const HybridState &state)
{
    const int L = problem.num_bs();
    BackhaulLinearization lin;
    lin.gamma = state.gamma;
    lin.compression_weight = problem.gamma_q * state.gamma;
    const Eigen::VectorXd r_hat_nats = state.r_hat_bps / problem.bandwidth_hz * std::log(2.0);
    lin.data_weight = state.beta_d * r_hat_nats.asDiagonal();
    lin.bound.resize(L);
    for (int l = 0; l < L; ++l)
        lin.bound(l) = problem.backhaul_per_symbol(l) * std::log(2.0) + std::log(state.gamma(l)) + 1.0;
    return lin;
}

ModeMatrix check_mode_exclusivity(const HybridState &state, const Eigen::VectorXd &eps, int *violations)
{
    const int L = static_cast<int>(state.w.rows());
    const int K = static_cast<int>(state.w.cols());
    ModeMatrix modes(L, K);
    int both = 0;
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
        {
            const bool d = std::norm(state.w_d(l, k)) > eps(l);
            const bool c = std::norm(state.w_c(l, k)) > eps(l);
            modes(l, k) = d ? (c ? LinkMode::both : LinkMode::data) : (c ? LinkMode::compressed : LinkMode::off);
            both += d && c;
        }
    if (violations)
        *violations = both;
    return modes;
}

namespace
{

constexpr double kUsageTolerance = 1e-9;
constexpr int kPolishRounds = 3;
constexpr double kPolishMargin[kPolishRounds] = {1e-3, 4e-3, 1.6e-2};
constexpr int kMaxStalled = 10;

// Minimal backhaul weight of |w|^2 over splits w = w_d + w_c, and the share of
// w assigned to the data part.
struct Split
{
    double weight;
    double data_share;
};

Split best_split(double a, double b, bool data, bool compression)
{
    if (data && compression)
    {
        if (a == 0.0)
            return {0.0, 1.0};
        return {a * b / (a + b), b / (a + b)};
    }
    if (data)
        return {a, 1.0};
    return {b, 0.0};
}

} // namespace

HybridState hybrid_inner_step(const SlotProblem &problem, HybridState state, const HybridRestriction &restriction,
                              double q_floor_relative, SolverStats &stats)
{
    const int L = problem.num_bs();
    const int K = problem.num_users();
    const ReceiverState rx = update_receivers(problem.H, state.w, state.q, 1.0, problem.gamma_m);
    state.rho = rx.rho;
    state.gamma = tangent_gamma(state, problem.gamma_q);
    const BackhaulLinearization lin = linearize_backhaul(problem, state);
    const Eigen::VectorXd cost = quantization_cost(problem.H, rx, problem.alpha, problem.gamma_m);

    QcqpProblem qp;
    qp.forms = assemble_forms(problem.H, rx, problem.alpha, problem.gamma_m);
    qp.pinned = problem.csi_pins();
    Eigen::MatrixXd share(L, K);
    Eigen::MatrixXd eta(L, K);
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
        {
            const bool d = restriction.allow_data(l, k);
            const bool c = restriction.allow_compression(l, k);
            if (!d && !c)
            {
                qp.pinned(l, k) = true;
                eta(l, k) = 0.0;
                share(l, k) = 0.0;
                continue;
            }
            const Split s = best_split(lin.data_weight(l, k), lin.compression_weight(l), d, c);
            eta(l, k) = s.weight;
            share(l, k) = s.data_share;
        }
    for (int l = 0; l < L; ++l)
    {
        AuxVariable q;
        q.cost = cost(l);
        q.floor = q_floor_relative * problem.power(l);
        if (!restriction.q_fixed.empty())
            q.fixed = restriction.q_fixed[l];
        qp.aux.push_back(q);

        QuadraticConstraint power;
        power.first = l;
        power.weights = Eigen::MatrixXd::Ones(1, K);
        power.bound = problem.power(l);
        power.aux = {{l, 1.0, 0.0}};
        power.kind = ConstraintKind::power;
        power.tag = l;
        qp.constraints.push_back(power);

        QuadraticConstraint backhaul;
        backhaul.first = l;
        backhaul.weights = eta.row(l);
        backhaul.bound = std::isinf(problem.backhaul_bps(l))
                             ? std::numeric_limits<double>::infinity()
                             : lin.bound(l) - (1.0 - restriction.backhaul_scale) * problem.backhaul_per_symbol(l) *
                                                  std::log(2.0);
        backhaul.aux = {{l, lin.gamma(l), 1.0}};
        backhaul.kind = ConstraintKind::backhaul;
        backhaul.tag = l;
        qp.constraints.push_back(backhaul);
    }

    QcqpOptions opt;
    if (state.multipliers.size() == static_cast<Eigen::Index>(qp.constraints.size()))
        opt.warm_start = &state.multipliers;
    const QcqpSolution sol = solve_qcqp(qp, opt);
    stats.record(sol);
    if (!sol.converged && sol.max_violation > 1e-6)
        return state; // keep the last feasible iterate
    state.multipliers = sol.multipliers;
    state.w = sol.w;
    state.q = sol.q;
    state.w_d = (share.array() * state.w.array()).matrix();
    state.w_c = state.w - state.w_d;
    return state;
}

namespace
{

double hybrid_wsr(const SlotProblem &problem, const HybridState &s)
{
    return weighted_sum_rate(problem.H, s.w, s.q, 1.0, problem.gamma_m, problem.alpha);
}

struct InnerResult
{
    HybridState state;
    std::vector<double> trace;
    int iterations = 0;
};

// A BS whose compressed signal has vanished stops compressing: its w_c is
// dropped and q is held at the floor, which leaves a pure data-sharing step.
void retire_compression(const SlotProblem &problem, HybridState &state, HybridRestriction &restriction,
                        const HybridOptions &options)
{
    for (int l = 0; l < problem.num_bs(); ++l)
    {
        const double P = problem.power(l);
        if (restriction.q_fixed[l] || state.w_c.row(l).squaredNorm() > options.threshold_relative * P)
            continue;
        const double floor = options.q_floor_relative * P;
        restriction.allow_compression.row(l).setConstant(false);
        restriction.q_fixed[l] = floor;
        state.w_c.row(l).setZero();
        state.w.row(l) = state.w_d.row(l);
        state.q(l) = floor;
    }
}

InnerResult run_inner(const SlotProblem &problem, HybridState state, HybridRestriction &restriction,
                      const HybridOptions &options, SolverStats &stats)
{
    InnerResult out;
    for (int it = 0; it < options.max_inner; ++it)
    {
        state = hybrid_inner_step(problem, std::move(state), restriction, options.q_floor_relative, stats);
        retire_compression(problem, state, restriction, options);
        ++out.iterations;
        const double wsr = hybrid_wsr(problem, state);
        const bool settled = !out.trace.empty() && std::abs(wsr - out.trace.back()) <= options.tolerance * std::abs(wsr);
        out.trace.push_back(wsr);
        if (settled)
            break;
    }
    out.state = std::move(state);
    return out;
}

} // namespace

namespace
{

HybridState prepare_state(const SlotProblem &problem, HybridState state)
{
    state.w = state.w_d + state.w_c;
    state.gamma = tangent_gamma(state, problem.gamma_q);
    state.beta_d = update_cluster_weights(problem.layout, state.w_d, problem.tau());
    state.r_hat_bps = model_rates(problem, state.w, state.q);
    state.rho = Eigen::VectorXd::Ones(problem.num_users());
    return state;
}

// Data part from a short data-sharing run and no compression. With
// `mid_range_q` the quantization noise starts at P 2^{-C/2} and the data part
// is scaled into the remaining power; otherwise q starts at the floor, which
// keeps every BS in data mode.
HybridState data_seed(const SlotProblem &problem, const HybridOptions &options, bool mid_range_q, SolverStats &stats)
{
    DataSharingOptions ds;
    ds.max_outer = options.warm_start_outer;
    ds.max_inner = options.max_inner;
    ds.tolerance = options.tolerance;
    ds.enforce_exact = false;
    const SlotResult seed = optimize_data_sharing(problem, ds);
    stats.merge(seed.solver);

    const int L = problem.num_bs();
    HybridState state;
    state.w_d = seed.w;
    state.w_c = Beamformers::Zero(L, problem.num_users());
    state.q.resize(L);
    for (int l = 0; l < L; ++l)
    {
        const double P = problem.power(l);
        const double floor = options.q_floor_relative * P;
        state.q(l) = mid_range_q ? std::max(floor, P * std::exp2(-problem.backhaul_per_symbol(l) / 2.0)) : floor;
        const double used = state.w_d.row(l).squaredNorm();
        const double room = std::max(P - state.q(l), 0.0);
        if (used > room)
            state.w_d.row(l) *= std::sqrt(room / used);
    }
    return prepare_state(problem, std::move(state));
}

// Compression part and q from the adaptive compression solution.
HybridState compression_seed(const SlotProblem &problem, const HybridOptions &options, SolverStats &stats)
{
    CompressionOptions co;
    co.max_iterations = options.max_inner;
    co.tolerance = options.tolerance;
    const SlotResult seed = optimize_compression_adaptive(problem, co);
    stats.merge(seed.solver);

    HybridState state;
    state.w_c = seed.w;
    state.w_d = Beamformers::Zero(problem.num_bs(), problem.num_users());
    state.q = seed.q.cwiseMax(options.q_floor_relative * problem.power);
    for (int l = 0; l < problem.num_bs(); ++l)
    {
        const double room = std::max(problem.power(l) - state.q(l), 0.0);
        const double used = state.w_c.row(l).squaredNorm();
        if (used > room)
            state.w_c.row(l) *= std::sqrt(room / used);
    }
    state = prepare_state(problem, std::move(state));
    // Price data links as if the whole signal were carried as data, so the
    // split can move links out of compression.
    state.beta_d = update_cluster_weights(problem.layout, state.w, problem.tau());
    return state;
}

HybridOutcome refine(const SlotProblem &problem, const HybridOptions &options, HybridState state)
{
    const int L = problem.num_bs();
    const int K = problem.num_users();
    const double tau = problem.tau();
    HybridOutcome out;
    SlotResult &result = out.result;
    result.strategy = StrategyKind::hybrid;

    HybridRestriction restriction = HybridRestriction::unrestricted(L, K);
    double previous = -std::numeric_limits<double>::infinity();
    for (int outer = 0; outer < options.max_outer; ++outer)
    {
        InnerResult inner = run_inner(problem, std::move(state), restriction, options, result.solver);
        state = std::move(inner.state);
        result.wsr_traces.push_back(std::move(inner.trace));
        result.inner_iterations += inner.iterations;
        ++result.outer_iterations;
        state.beta_d = update_cluster_weights(problem.layout, state.w_d, tau);
        state.r_hat_bps = model_rates(problem, state.w, state.q);
        const double wsr = hybrid_wsr(problem, state);
        if (std::abs(wsr - previous) <= options.tolerance * std::abs(wsr))
        {
            result.converged = true;
            break;
        }
        previous = wsr;
    }

    // Exact accounting: data links above threshold pay the full user rate.
    // Violations are first absorbed by re-solving against a slightly reduced
    // capacity; persistent ones move the weakest data link of the BS to
    // compression, or drop it where the BS no longer compresses.
    const Eigen::VectorXd threshold = link_thresholds(problem, options.threshold_relative);
    int polish = 0;
    int stalled = 0;
    for (;;)
    {
        state.w_d = threshold_links(problem.layout, state.w_d, threshold);
        state.w = state.w_d + state.w_c;
        const Eigen::VectorXd rates = evaluate_rates(problem, state.w, state.q);
        const Eigen::VectorXd usage = backhaul_usage_exact(problem.layout, state.w_d, rates, threshold) +
                                      compression_usage(problem, state.w_c, state.q);
        std::vector<int> violating;
        for (int l = 0; l < L; ++l)
            if (usage(l) > problem.backhaul_bps(l) * (1.0 + kUsageTolerance))
                violating.push_back(l);
        if (violating.empty())
            break;
        if (polish < kPolishRounds)
            restriction.backhaul_scale = 1.0 - kPolishMargin[polish++];
        else
        {
            bool moved = false;
            for (int l : violating)
            {
                int weakest = -1;
                double smallest = std::numeric_limits<double>::infinity();
                for (int k = 0; k < K; ++k)
                {
                    const double e = std::norm(state.w_d(l, k));
                    if (e > 0.0 && e * rates(k) < smallest)
                    {
                        smallest = e * rates(k);
                        weakest = k;
                    }
                }
                if (weakest < 0)
                    continue;
                moved = true;
                restriction.allow_data(l, weakest) = false;
                if (restriction.allow_compression(l, weakest))
                    state.w_c(l, weakest) += state.w_d(l, weakest);
                state.w_d(l, weakest) = 0.0;
            }
            if (moved)
                ++result.repairs;
            else if (++stalled > kMaxStalled)
                break;
            else
                restriction.backhaul_scale *= 0.9;
        }
        state.beta_d = update_cluster_weights(problem.layout, state.w_d, tau);
        state.r_hat_bps = model_rates(problem, state.w, state.q);
        InnerResult inner = run_inner(problem, std::move(state), restriction, options, result.solver);
        state = std::move(inner.state);
        result.wsr_traces.push_back(std::move(inner.trace));
        result.inner_iterations += inner.iterations;
    }

    result.w = state.w;
    result.w_data = state.w_d;
    result.w_compressed = state.w_c;
    result.q = state.q;
    finalize_rates(problem, result);
    result.backhaul_data_bps = backhaul_usage_exact(problem.layout, state.w_d, result.rate_bps, threshold);
    result.backhaul_compression_bps = compression_usage(problem, state.w_c, state.q);
    result.modes = check_mode_exclusivity(state, link_thresholds(problem, options.mode_threshold_relative),
                                          &result.mode_violations);
    out.state = std::move(state);
    return out;
}

} // namespace

HybridOutcome optimize_hybrid(const SlotProblem &problem, const HybridOptions &options)
{
    if (!problem.layout.single_antenna() || (!problem.H.empty() && problem.H.front().rows() != 1))
        throw std::invalid_argument("hybrid strategy requires single-antenna BSs and users");
    // Three starts: data-sharing with mid-range q, pure data-sharing, and
    // adaptive compression. The best model weighted sum rate is kept.
    SolverStats seed_stats;
    std::vector<HybridOutcome> outcomes;
    outcomes.push_back(refine(problem, options, data_seed(problem, options, true, seed_stats)));
    outcomes.push_back(refine(problem, options, data_seed(problem, options, false, seed_stats)));
    outcomes.push_back(refine(problem, options, compression_seed(problem, options, seed_stats)));
    std::size_t pick = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i)
        if (hybrid_wsr(problem, outcomes[i].state) > hybrid_wsr(problem, outcomes[pick].state))
            pick = i;
    HybridOutcome best = std::move(outcomes[pick]);
    for (std::size_t i = 0; i < outcomes.size(); ++i)
        if (i != pick)
            best.result.solver.merge(outcomes[i].result.solver);
    best.result.solver.merge(seed_stats);
    return best;
}

} // namespace cran
