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

#include "cran/slot_problem.hpp"

#include <cmath>
#include <stdexcept>

namespace cran
{

BoolArray SlotProblem::csi_pins() const
{
    BoolArray pins = BoolArray::Constant(num_antennas(), num_users(), false);
    for (int k = 0; k < num_users(); ++k)
        for (int l = 0; l < num_bs(); ++l)
            if (!csi(k, l))
                pins.block(layout.first[l], k, layout.count[l], 1).setConstant(true);
    return pins;
}

namespace
{

Eigen::VectorXd normalized_alpha(const Eigen::VectorXd &alpha, int users)
{
    if (alpha.size() != users)
        throw std::invalid_argument("PF weight vector has wrong length");
    if ((alpha.array() < 0.0).any() || !alpha.allFinite())
        throw std::invalid_argument("PF weights must be finite and nonnegative");
    const double m = alpha.maxCoeff();
    return m > 0.0 ? Eigen::VectorXd(alpha / m) : alpha;
}

} // namespace

SlotProblem make_slot_problem(const ChannelRealization &ch, const Topology &topo, const NetworkConfig &cfg,
                              const Eigen::VectorXd &alpha)
{
    SlotProblem p;
    p.layout = ch.layout;
    const int T = p.num_antennas();
    p.power.resize(T);
    p.backhaul_bps.resize(ch.layout.num_bs());
    for (int l = 0; l < ch.layout.num_bs(); ++l)
    {
        const Tier tier = topo.base_stations[l].tier;
        p.power.segment(ch.layout.first[l], ch.layout.count[l]).setConstant(cfg.power_per_antenna_mw(tier));
        p.backhaul_bps(l) = cfg.backhaul_bps(tier);
    }
    p.power_ref_mw = p.power.maxCoeff();
    p.power /= p.power_ref_mw;
    const double scale = std::sqrt(p.power_ref_mw / cfg.noise_power_mw());
    for (int k = 0; k < ch.num_users(); ++k)
    {
        p.H_true.push_back(ch.H[k] * scale);
        p.H.push_back(ch.masked(k) * scale);
    }
    p.csi = ch.csi_mask;
    p.alpha = normalized_alpha(alpha, ch.num_users());
    p.strongest_bs = ch.strongest_bs;
    p.gamma_m = cfg.gamma_m();
    p.gamma_q = cfg.gamma_q();
    p.bandwidth_hz = cfg.bandwidth_hz;
    return p;
}

SlotProblem make_normalized_problem(const AntennaLayout &layout, std::vector<Eigen::MatrixXcd> H,
                                    Eigen::VectorXd power, Eigen::VectorXd backhaul_bps, Eigen::VectorXd alpha,
                                    double gamma_m, double gamma_q, double bandwidth_hz)
{
    SlotProblem p;
    p.layout = layout;
    const int K = static_cast<int>(H.size());
    if (power.size() != layout.num_antennas() || backhaul_bps.size() != layout.num_bs())
        throw std::invalid_argument("power/backhaul vectors do not match the antenna layout");
    for (const auto &h : H)
        if (h.cols() != layout.num_antennas())
            throw std::invalid_argument("channel width does not match the antenna layout");
    p.strongest_bs.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
    {
        double best = -1.0;
        for (int l = 0; l < layout.num_bs(); ++l)
        {
            const double energy = H[k].middleCols(layout.first[l], layout.count[l]).squaredNorm();
            if (energy > best)
            {
                best = energy;
                p.strongest_bs[k] = l;
            }
        }
    }
    p.H_true = H;
    p.H = std::move(H);
    p.csi = BoolArray::Constant(K, layout.num_bs(), true);
    p.power = std::move(power);
    p.backhaul_bps = std::move(backhaul_bps);
    p.alpha = normalized_alpha(alpha, K);
    p.gamma_m = gamma_m;
    p.gamma_q = gamma_q;
    p.bandwidth_hz = bandwidth_hz;
    return p;
}

} // namespace cran
