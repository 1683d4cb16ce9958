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

#include "cran/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cran
{

PFState PFState::initial(int num_users, double t_c, double floor_bps)
{
    if (!(t_c >= 1.0) || !(floor_bps > 0.0))
        throw std::invalid_argument("PF window must be at least 1 slot and the rate floor positive");
    PFState s;
    s.t_c = t_c;
    s.floor_bps = floor_bps;
    s.avg_rate_bps = Eigen::VectorXd::Constant(num_users, floor_bps);
    s.alpha = s.avg_rate_bps.cwiseInverse();
    return s;
}

PFState update_pf(PFState state, const Eigen::VectorXd &slot_rates_bps)
{
    if (slot_rates_bps.size() != state.avg_rate_bps.size())
        throw std::invalid_argument("slot rate vector has wrong length");
    if ((slot_rates_bps.array() < 0.0).any() || !slot_rates_bps.allFinite())
        throw std::invalid_argument("slot rates must be finite and nonnegative");
    const double a = 1.0 / state.t_c;
    state.avg_rate_bps = ((1.0 - a) * state.avg_rate_bps + a * slot_rates_bps).cwiseMax(state.floor_bps);
    state.alpha = state.avg_rate_bps.cwiseInverse();
    return state;
}

double percentile(std::vector<double> samples, double p)
{
    if (samples.empty())
        throw std::invalid_argument("percentile of an empty sample");
    std::sort(samples.begin(), samples.end());
    const double pos = std::clamp(p, 0.0, 100.0) / 100.0 * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    const double t = pos - static_cast<double>(lo);
    return samples[lo] + t * (samples[hi] - samples[lo]);
}

RateCdf rate_cdf(const Eigen::VectorXd &user_mean_bps)
{
    RateCdf out;
    out.mean_rate_bps = user_mean_bps;
    std::vector<double> v(user_mean_bps.data(), user_mean_bps.data() + user_mean_bps.size());
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.points.push_back({v[i], static_cast<double>(i + 1) / n});
    if (!v.empty())
    {
        out.p10 = percentile(v, 10.0);
        out.p50 = percentile(v, 50.0);
        out.p90 = percentile(v, 90.0);
        out.mean = user_mean_bps.mean();
    }
    return out;
}

RateCdf accumulate_cdf(const std::vector<Eigen::VectorXd> &slot_rates)
{
    if (slot_rates.empty())
        throw std::invalid_argument("no completed slots");
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(slot_rates.front().size());
    for (const auto &r : slot_rates)
    {
        if (r.size() != mean.size())
            throw std::invalid_argument("slots have different user counts");
        mean += r;
    }
    mean /= static_cast<double>(slot_rates.size());
    return rate_cdf(mean);
}

} // namespace cran
