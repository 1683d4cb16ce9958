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
#include "cran/strategy.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace cran;
using Catch::Approx;

namespace
{

SlotProblem random_problem(std::mt19937_64 &gen, int L, int K, double backhaul_bits, double gamma_q)
{
    std::vector<Eigen::MatrixXcd> H;
    for (int k = 0; k < K; ++k)
    {
        Eigen::MatrixXcd h = oracle::random_complex(gen, 1, L, 2.0);
        h(0, k % L) *= 2.5;
        H.push_back(h);
    }
    return make_normalized_problem(AntennaLayout::uniform(L, 1), std::move(H), Eigen::VectorXd::Ones(L),
                                   Eigen::VectorXd::Constant(L, backhaul_bits), Eigen::VectorXd::Ones(K), 1.0,
                                   gamma_q, 1.0);
}

HybridState seed_state(const SlotProblem &p, std::mt19937_64 &gen)
{
    const int L = p.num_bs(), K = p.num_users();
    HybridState s;
    s.w_d = oracle::random_complex(gen, L, K, 0.2);
    s.w_c = oracle::random_complex(gen, L, K, 0.2);
    s.w = s.w_d + s.w_c;
    s.q = Eigen::VectorXd::Constant(L, 0.05);
    s.gamma = tangent_gamma(s, p.gamma_q);
    s.beta_d = (s.w_d.cwiseAbs2().array() + p.tau()).inverse().matrix();
    s.r_hat_bps = model_rates(p, s.w, s.q);
    s.rho = Eigen::VectorXd::Ones(K);
    return s;
}

} // namespace

TEST_CASE("compression surrogate is tight at the tangent point", "[hybrid]")
{
    for (double gq : {1.0, 2.5})
        for (double s : {0.0, 0.3, 2.0})
            for (double q : {0.01, 0.4})
            {
                const double g = 1.0 / (gq * s + q);
                CHECK(compression_surrogate(g, gq, s, q) == Approx(compression_rate_nats(gq, s, q)).margin(1e-12));
                for (double f : {0.3, 0.9, 1.1, 4.0})
                    CHECK(compression_surrogate(f * g, gq, s, q) > compression_rate_nats(gq, s, q));
            }
    CHECK(compression_rate_nats(1.0, 1.0, 1.0) == Approx(std::log(2.0)));
}

TEST_CASE("tangent gamma and backhaul linearization", "[hybrid]")
{
    const SlotProblem p = make_normalized_problem(AntennaLayout::uniform(1, 1), {Eigen::MatrixXcd::Ones(1, 1)},
                                                  Eigen::VectorXd::Ones(1), Eigen::VectorXd::Constant(1, 2e6),
                                                  Eigen::VectorXd::Ones(1), 1.0, 2.0, 1e6);
    HybridState s;
    s.w_c = Beamformers::Constant(1, 1, 0.5); // |w_c|^2 = 0.25
    s.w_d = Beamformers::Constant(1, 1, 0.5);
    s.w = s.w_c + s.w_d;
    s.q = Eigen::VectorXd::Constant(1, 0.5);
    s.gamma = tangent_gamma(s, p.gamma_q);
    CHECK(s.gamma(0) == Approx(1.0)); // 1 / (2 * 0.25 + 0.5)
    s.beta_d = Eigen::MatrixXd::Constant(1, 1, 4.0);
    s.r_hat_bps = Eigen::VectorXd::Constant(1, 1e6);
    const BackhaulLinearization lin = linearize_backhaul(p, s);
    CHECK(lin.data_weight(0, 0) == Approx(4.0 * std::log(2.0)));
    CHECK(lin.compression_weight(0) == Approx(2.0));
    CHECK(lin.bound(0) == Approx(2.0 * std::log(2.0) + 1.0));
}

TEST_CASE("mode classification", "[hybrid]")
{
    HybridState s;
    s.w_d = Beamformers::Zero(2, 2);
    s.w_c = Beamformers::Zero(2, 2);
    s.w_d(0, 0) = 1.0;
    s.w_c(0, 1) = 1.0;
    s.w_d(1, 1) = 1.0;
    s.w_c(1, 1) = 0.5;
    s.w_c(1, 0) = 1e-3; // below threshold
    s.w = s.w_d + s.w_c;
    int violations = -1;
    const ModeMatrix m = check_mode_exclusivity(s, Eigen::Vector2d(1e-4, 1e-4), &violations);
    CHECK(m(0, 0) == LinkMode::data);
    CHECK(m(0, 1) == LinkMode::compressed);
    CHECK(m(1, 0) == LinkMode::off);
    CHECK(m(1, 1) == LinkMode::both);
    CHECK(violations == 1);
}

TEST_CASE("hybrid requires single antennas", "[hybrid]")
{
    const SlotProblem p = make_normalized_problem(AntennaLayout::uniform(1, 2), {Eigen::MatrixXcd::Ones(1, 2)},
                                                  Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(1),
                                                  Eigen::VectorXd::Ones(1), 1.0, 1.0, 1.0);
    CHECK_THROWS_AS(optimize_hybrid(p), std::invalid_argument);
}

TEST_CASE("inner steps never decrease the weighted sum rate", "[hybrid]")
{
    std::mt19937_64 gen(51);
    for (int trial = 0; trial < 10; ++trial)
    {
        const SlotProblem p = random_problem(gen, 3, 4, 1.5 + trial % 3, 2.0);
        HybridState s = seed_state(p, gen);
        // Make the start feasible for the surrogate constraint by shrinking it.
        s.w_d *= 0.05;
        s.w_c *= 0.05;
        s.w = s.w_d + s.w_c;
        s.q.setConstant(0.5);
        s.gamma = tangent_gamma(s, p.gamma_q);
        s.beta_d = (s.w_d.cwiseAbs2().array() + p.tau()).inverse().matrix();
        s.r_hat_bps = model_rates(p, s.w, s.q);
        const HybridRestriction r = HybridRestriction::unrestricted(3, 4);
        SolverStats stats;
        double previous = -1.0;
        for (int it = 0; it < 15; ++it)
        {
            s = hybrid_inner_step(p, std::move(s), r, 1e-12, stats);
            const double wsr = weighted_sum_rate(p.H, s.w, s.q, 1.0, p.gamma_m, p.alpha);
            if (it > 0)
                CHECK(wsr >= previous * (1.0 - 1e-8));
            previous = wsr;
            for (int l = 0; l < 3; ++l)
                CHECK(s.w.row(l).squaredNorm() + s.q(l) <= 1.0 + 1e-8);
        }
        CHECK(stats.qcqp_unconverged == 0);
    }
}

TEST_CASE("single link hybrid picks the better pure mode", "[hybrid]")
{
    // One BS and one user: mixing never helps, so the optimum is the best of
    // data-only min(log2(1 + g P), C) and compression-only (grid search).
    for (double gain : {0.5, 1.5, 4.0})
        for (double bits : {0.5, 2.0, 6.0})
        {
            const double gamma_q = 2.0;
            const SlotProblem p =
                make_normalized_problem(AntennaLayout::uniform(1, 1), {Eigen::MatrixXcd::Constant(1, 1, gain)},
                                        Eigen::VectorXd::Ones(1), Eigen::VectorXd::Constant(1, bits),
                                        Eigen::VectorXd::Ones(1), 1.0, gamma_q, 1.0);
            const double g = gain * gain;
            const double data_only = std::min(std::log2(1.0 + g), bits);
            double compression_only = 0.0;
            const double levels = std::exp2(bits) - 1.0;
            for (int s = 0; s <= 20000; ++s)
            {
                const double pw = s / 20000.0;
                const double q = gamma_q * pw / levels;
                if (pw + q > 1.0)
                    break;
                compression_only = std::max(compression_only, std::log2(1.0 + g * pw / (1.0 + g * q)));
            }
            const double best = std::max(data_only, compression_only);
            const HybridOutcome out = optimize_hybrid(p);
            INFO("gain " << gain << " bits " << bits);
            CHECK(out.result.sum_rate_bps() <= best * (1.0 + 1e-6));
            CHECK(out.result.sum_rate_bps() >= 0.97 * best);
            const Feasibility f = check_feasibility(p, out.result);
            CHECK(f.power <= 1e-6);
            CHECK(f.backhaul <= 1e-6);
        }
}

TEST_CASE("restricted hybrid reduces to the pure strategies", "[hybrid]")
{
    std::mt19937_64 gen(61);
    for (int trial = 0; trial < 4; ++trial)
    {
        const SlotProblem p = random_problem(gen, 3, 4, 3.0, 2.0);
        // Compression only: the convex step is the adaptive compression step
        // with one antenna per BS.
        HybridRestriction r = HybridRestriction::unrestricted(3, 4);
        r.allow_data.setConstant(false);
        HybridState s = seed_state(p, gen);
        s.w_d.setZero();
        s.w = s.w_c;
        s.gamma = tangent_gamma(s, p.gamma_q);
        SolverStats stats;
        for (int it = 0; it < 100; ++it)
            s = hybrid_inner_step(p, std::move(s), r, 1e-12, stats);
        CHECK(s.w_d.squaredNorm() == 0.0);
        const double hybrid_wsr = weighted_sum_rate(p.H, s.w, s.q, 1.0, p.gamma_m, p.alpha);
        const SlotResult comp = optimize_compression_adaptive(p);
        CHECK(hybrid_wsr == Approx(comp.weighted_sum_rate_bps).epsilon(0.03));
        // At a fixed point the quantization noise exhausts the fronthaul.
        const Eigen::VectorXd usage = compression_usage(p, s.w_c, s.q);
        for (int l = 0; l < 3; ++l)
            CHECK(usage(l) <= 3.0 * (1.0 + 1e-6));
    }
}

TEST_CASE("hybrid solutions are feasible and competitive", "[hybrid]")
{
    std::mt19937_64 gen(71);
    for (int trial = 0; trial < 4; ++trial)
    {
        const SlotProblem p = random_problem(gen, 3, 6, 2.0 + 2.0 * trial, 2.0);
        const HybridOutcome h = optimize_hybrid(p);
        const Feasibility f = check_feasibility(p, h.result);
        CHECK(f.power <= 1e-6);
        CHECK(f.backhaul <= 1e-6);
        const SlotResult ds = optimize_data_sharing(p);
        const SlotResult comp = optimize_compression_adaptive(p);
        const double best = std::max(ds.weighted_sum_rate_bps, comp.weighted_sum_rate_bps);
        INFO("hybrid " << h.result.weighted_sum_rate_bps << " data " << ds.weighted_sum_rate_bps << " compression "
                       << comp.weighted_sum_rate_bps);
        CHECK(h.result.weighted_sum_rate_bps >= 0.95 * best);
        CHECK((h.result.w_data + h.result.w_compressed - h.result.w).norm() == 0.0);
    }
}

TEST_CASE("hybrid tracks the pure strategies at the backhaul extremes", "[hybrid]")
{
    std::mt19937_64 gen(81);
    for (int trial = 0; trial < 3; ++trial)
    {
        const SlotProblem low = random_problem(gen, 3, 6, 0.3, 2.0);
        const HybridOutcome h_low = optimize_hybrid(low);
        const SlotResult ds = optimize_data_sharing(low);
        CHECK(h_low.result.weighted_sum_rate_bps >= 0.98 * ds.weighted_sum_rate_bps);
        CHECK(h_low.result.backhaul_compression_bps.sum() <= 0.1 * h_low.result.backhaul_data_bps.sum());

        // Enough fronthaul for near-lossless compression but not for sharing
        // every user's data with every BS.
        SlotProblem high = low;
        high.backhaul_bps.setConstant(12.0);
        const HybridOutcome h_high = optimize_hybrid(high);
        const SlotResult comp = optimize_compression_adaptive(high);
        CHECK(h_high.result.weighted_sum_rate_bps >= 0.98 * comp.weighted_sum_rate_bps);
    }
}
