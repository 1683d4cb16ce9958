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

#include <Eigen/Dense>

#include <vector>

namespace cran
{

/// Exponentially averaged user rates and the proportional-fair weights they induce.
struct PFState
{
    Eigen::VectorXd avg_rate_bps;
    Eigen::VectorXd alpha; // 1 / avg_rate
    double t_c = 20.0;     // averaging window in slots
    double floor_bps = 1.0;

    static PFState initial(int num_users, double t_c = 20.0, double floor_bps = 1.0);
};

/// avg <- (1 - 1/t_c) avg + r / t_c, clamped at the floor; alpha <- 1 / avg.
/// Throws std::invalid_argument on a negative or mismatched rate vector.
PFState update_pf(PFState state, const Eigen::VectorXd &slot_rates_bps);

/// Linear interpolation between order statistics: position p/100 * (n - 1)
/// of the sorted samples. Throws std::invalid_argument on an empty sample.
double percentile(std::vector<double> samples, double p);

struct CdfPoint
{
    double rate_bps;
    double cdf;
};

struct RateCdf
{
    Eigen::VectorXd mean_rate_bps; // long-term rate of every user
    std::vector<CdfPoint> points;  // sorted, cdf = i / n for the i-th sample
    double p10 = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    double mean = 0.0;
};

/// Empirical CDF and percentiles of long-term user rates.
RateCdf rate_cdf(const Eigen::VectorXd &user_mean_bps);

/// Per-user mean over slots (entries of `slot_rates` are slots), then rate_cdf.
/// Needs at least one slot.
RateCdf accumulate_cdf(const std::vector<Eigen::VectorXd> &slot_rates);

} // namespace cran
