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

#include "cran/experiment.hpp"
#include "cran/scheduler.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace cran;
using Catch::Approx;

TEST_CASE("a one-slot window tracks the last rate", "[scheduler]")
{
    PFState s = PFState::initial(3, 1.0);
    s = update_pf(s, Eigen::Vector3d(5e6, 2e6, 0.0));
    CHECK(s.avg_rate_bps(0) == Approx(5e6));
    CHECK(s.avg_rate_bps(1) == Approx(2e6));
    CHECK(s.avg_rate_bps(2) == 1.0);
    s = update_pf(s, Eigen::Vector3d(1e6, 7e6, 3e6));
    CHECK(s.avg_rate_bps(0) == Approx(1e6));
    CHECK(s.alpha(1) == Approx(1.0 / 7e6));
}

TEST_CASE("the average follows the exponential filter", "[scheduler]")
{
    PFState s = PFState::initial(1, 20.0);
    double expected = s.avg_rate_bps(0);
    for (int t = 0; t < 30; ++t)
    {
        const double r = 1e6 * (1 + t % 3);
        s = update_pf(s, Eigen::VectorXd::Constant(1, r));
        expected = std::max(1.0, (1.0 - 1.0 / 20.0) * expected + r / 20.0);
        CHECK(s.avg_rate_bps(0) == Approx(expected).epsilon(1e-14));
        CHECK(s.alpha(0) == Approx(1.0 / expected).epsilon(1e-14));
    }
}

TEST_CASE("equal service keeps equal weights", "[scheduler]")
{
    PFState s = PFState::initial(4);
    for (int t = 0; t < 10; ++t)
        s = update_pf(s, Eigen::VectorXd::Constant(4, 3e6));
    for (int k = 1; k < 4; ++k)
        CHECK(s.alpha(k) == s.alpha(0));
}

TEST_CASE("a starved user gains weight", "[scheduler]")
{
    PFState s = PFState::initial(2);
    s = update_pf(s, Eigen::Vector2d(4e6, 4e6));
    double prev_ratio = s.alpha(1) / s.alpha(0);
    for (int t = 0; t < 15; ++t)
    {
        s = update_pf(s, Eigen::Vector2d(4e6, 0.0));
        const double ratio = s.alpha(1) / s.alpha(0);
        CHECK(ratio > prev_ratio);
        prev_ratio = ratio;
    }
}

TEST_CASE("bad scheduler input is rejected", "[scheduler]")
{
    CHECK_THROWS_AS(PFState::initial(2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(PFState::initial(2, 20.0, 0.0), std::invalid_argument);
    const PFState s = PFState::initial(2);
    CHECK_THROWS_AS(update_pf(s, Eigen::Vector3d(1, 1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(update_pf(s, Eigen::Vector2d(1, -1)), std::invalid_argument);
    CHECK_THROWS_AS(update_pf(s, Eigen::Vector2d(1, std::numeric_limits<double>::quiet_NaN())),
                    std::invalid_argument);
    CHECK_THROWS_AS(percentile({}, 50.0), std::invalid_argument);
    CHECK_THROWS_AS(accumulate_cdf({}), std::invalid_argument);
}

TEST_CASE("percentiles interpolate between order statistics", "[scheduler]")
{
    CHECK(percentile({10.0, 30.0}, 50.0) == Approx(20.0));
    CHECK(percentile({30.0, 10.0, 20.0}, 50.0) == 20.0);
    CHECK(percentile({1.0, 2.0, 3.0, 4.0, 5.0}, 10.0) == Approx(1.4));
    CHECK(percentile({1.0, 2.0, 3.0, 4.0, 5.0}, 90.0) == Approx(4.6));
    CHECK(percentile({7.0}, 10.0) == 7.0);
    CHECK(percentile({2.0, 4.0}, 0.0) == 2.0);
    CHECK(percentile({2.0, 4.0}, 100.0) == 4.0);
}

TEST_CASE("a single user gives a unit step", "[scheduler]")
{
    const RateCdf c = rate_cdf(Eigen::VectorXd::Constant(1, 3e6));
    REQUIRE(c.points.size() == 1);
    CHECK(c.points[0].rate_bps == 3e6);
    CHECK(c.points[0].cdf == 1.0);
    CHECK(c.p10 == 3e6);
    CHECK(c.p50 == 3e6);
    CHECK(c.p90 == 3e6);
}

TEST_CASE("the rate CDF is sorted and ends at one", "[scheduler]")
{
    Eigen::VectorXd r(6);
    r << 5.0, 1.0, 4.0, 1.0, 9.0, 2.0;
    const RateCdf c = rate_cdf(r);
    REQUIRE(c.points.size() == 6);
    for (std::size_t i = 1; i < c.points.size(); ++i)
    {
        CHECK(c.points[i].rate_bps >= c.points[i - 1].rate_bps);
        CHECK(c.points[i].cdf > c.points[i - 1].cdf);
    }
    CHECK(c.points.back().cdf == 1.0);
    CHECK(c.mean == Approx(22.0 / 6.0));
    CHECK(c.p50 == Approx(3.0));
}

TEST_CASE("accumulated CDFs use per-user means over slots", "[scheduler]")
{
    const RateCdf c = accumulate_cdf({Eigen::Vector2d(2.0, 10.0), Eigen::Vector2d(4.0, 0.0)});
    CHECK(c.mean_rate_bps(0) == Approx(3.0));
    CHECK(c.mean_rate_bps(1) == Approx(5.0));
    CHECK(c.p50 == Approx(4.0));
}

TEST_CASE("full cooperation dominates no cooperation over a long horizon", "[scheduler][slow]")
{
    ExperimentSpec spec;
    spec.scenario.num_cells = 1;
    spec.scenario.users_per_cell = 4;
    spec.strategies = {StrategyKind::full_coop, StrategyKind::no_coop};
    spec.num_slots = 200;
    spec.seeds = {3};
    spec.workers = 1;
    const ExperimentResult res = run_experiment(spec);
    const StrategyRun *fc = res.find(StrategyKind::full_coop, SweepPoint{});
    const StrategyRun *nc = res.find(StrategyKind::no_coop, SweepPoint{});
    REQUIRE(fc != nullptr);
    REQUIRE(nc != nullptr);
    CHECK(fc->sum_rate_bps > nc->sum_rate_bps);
    CHECK(fc->cdf.p50 > nc->cdf.p50);
}
