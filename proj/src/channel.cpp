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

#include "cran/channel.hpp"

#include "cran/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cran
{

bool AntennaLayout::single_antenna() const
{
    return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

AntennaLayout AntennaLayout::from_counts(const std::vector<int> &counts)
{
    AntennaLayout layout;
    int a = 0;
    for (std::size_t l = 0; l < counts.size(); ++l)
    {
        if (counts[l] < 1)
            throw std::invalid_argument("every BS needs at least one antenna");
        layout.first.push_back(a);
        layout.count.push_back(counts[l]);
        for (int m = 0; m < counts[l]; ++m)
            layout.bs_of_antenna.push_back(static_cast<int>(l));
        a += counts[l];
    }
    return layout;
}

AntennaLayout AntennaLayout::from_topology(const Topology &topo)
{
    std::vector<int> counts;
    for (const auto &bs : topo.base_stations)
        counts.push_back(bs.num_antennas);
    return from_counts(counts);
}

AntennaLayout AntennaLayout::uniform(int num_bs, int antennas_per_bs)
{
    return from_counts(std::vector<int>(static_cast<std::size_t>(num_bs), antennas_per_bs));
}

Eigen::MatrixXcd ChannelRealization::masked(int k) const
{
    Eigen::MatrixXcd h = H[k];
    for (int l = 0; l < layout.num_bs(); ++l)
        if (!csi_mask(k, l))
            h.middleCols(layout.first[l], layout.count[l]).setZero();
    return h;
}

BoolArray strongest_bs_mask(const Eigen::MatrixXd &avg_rx_power, int cluster_size)
{
    const int users = static_cast<int>(avg_rx_power.rows());
    const int bss = static_cast<int>(avg_rx_power.cols());
    BoolArray mask = BoolArray::Constant(users, bss, cluster_size == 0);
    if (cluster_size == 0)
        return mask;
    const int keep = std::min(cluster_size, bss);
    std::vector<int> order(static_cast<std::size_t>(bss));
    for (int k = 0; k < users; ++k)
    {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return avg_rx_power(k, a) > avg_rx_power(k, b); });
        for (int i = 0; i < keep; ++i)
            mask(k, order[i]) = true;
    }
    return mask;
}

ChannelRealization draw_channel(const Topology &topo, const NetworkConfig &cfg, std::uint64_t slot, FadingMode fading)
{
    ChannelRealization ch;
    ch.layout = AntennaLayout::from_topology(topo);
    const int users = topo.num_users();
    const int bss = topo.num_bs();
    const int rx = cfg.rx_antennas;
    const int cols = ch.layout.num_antennas();

    const Eigen::MatrixXd gain_db = topo.link_gain_db(cfg);
    ch.avg_rx_power_mw.resize(users, bss);
    for (int k = 0; k < users; ++k)
        for (int l = 0; l < bss; ++l)
        {
            const auto &bs = topo.base_stations[l];
            ch.avg_rx_power_mw(k, l) = db_to_linear(gain_db(k, l)) * cfg.power_per_antenna_mw(bs.tier) * bs.num_antennas;
        }
    ch.csi_mask = strongest_bs_mask(ch.avg_rx_power_mw, cfg.csi_cluster_size);
    ch.strongest_bs.resize(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k)
    {
        Eigen::Index best = 0;
        ch.avg_rx_power_mw.row(k).maxCoeff(&best);
        ch.strongest_bs[k] = static_cast<int>(best);
    }

    Rng rng(cfg.rng_seed, StreamPurpose::fading, slot);
    ch.H.assign(static_cast<std::size_t>(users), Eigen::MatrixXcd::Zero(rx, cols));
    for (int k = 0; k < users; ++k)
        for (int l = 0; l < bss; ++l)
        {
            const double amplitude = std::sqrt(db_to_linear(gain_db(k, l)));
            const int first = ch.layout.first[l];
            for (int m = 0; m < ch.layout.count[l]; ++m)
                for (int n = 0; n < rx; ++n)
                {
                    const std::complex<double> f =
                        fading == FadingMode::rayleigh ? rng.complex_normal() : std::complex<double>(1.0, 0.0);
                    ch.H[k](n, first + m) = amplitude * f;
                }
        }
    return ch;
}

namespace
{

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    return out;
}

} // namespace

void write_channel_csv(std::ostream &os, const ChannelRealization &ch)
{
    const int users = ch.num_users();
    const int rx = ch.num_rx();
    os << "cran-channel,1," << users << "," << rx << "," << ch.layout.num_bs() << "\n";
    for (int l = 0; l < ch.layout.num_bs(); ++l)
        os << "bs," << l << "," << ch.layout.first[l] << "," << ch.layout.count[l] << "\n";
    for (int k = 0; k < users; ++k)
        for (int n = 0; n < rx; ++n)
            for (int c = 0; c < ch.layout.num_antennas(); ++c)
                os << "h," << k << "," << n << "," << c << "," << fmt(ch.H[k](n, c).real()) << ","
                   << fmt(ch.H[k](n, c).imag()) << "\n";
    for (int k = 0; k < users; ++k)
        for (int l = 0; l < ch.layout.num_bs(); ++l)
            os << "link," << k << "," << l << "," << (ch.csi_mask(k, l) ? 1 : 0) << ","
               << fmt(ch.avg_rx_power_mw(k, l)) << "\n";
}

ChannelRealization read_channel_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("channel csv: empty input");
    auto head = split_csv(line);
    if (head.size() != 5 || head[0] != "cran-channel" || head[1] != "1")
        throw std::invalid_argument("channel csv: bad header '" + line + "'");
    const int users = std::stoi(head[2]);
    const int rx = std::stoi(head[3]);
    const int bss = std::stoi(head[4]);

    std::vector<int> counts(static_cast<std::size_t>(bss), 0);
    ChannelRealization ch;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        auto cells = split_csv(line);
        if (cells[0] == "bs" && cells.size() == 4)
            counts.at(std::stoul(cells[1])) = std::stoi(cells[3]);
        else
            rows.push_back(std::move(cells));
    }
    ch.layout = AntennaLayout::from_counts(counts);
    ch.H.assign(static_cast<std::size_t>(users), Eigen::MatrixXcd::Zero(rx, ch.layout.num_antennas()));
    ch.csi_mask = BoolArray::Constant(users, bss, false);
    ch.avg_rx_power_mw = Eigen::MatrixXd::Zero(users, bss);
    for (const auto &cells : rows)
    {
        if (cells[0] == "h" && cells.size() == 6)
            ch.H.at(std::stoul(cells[1]))(std::stoi(cells[2]), std::stoi(cells[3])) = {std::stod(cells[4]),
                                                                                          std::stod(cells[5])};
        else if (cells[0] == "link" && cells.size() == 5)
        {
            const int k = std::stoi(cells[1]), l = std::stoi(cells[2]);
            ch.csi_mask(k, l) = cells[3] == "1";
            ch.avg_rx_power_mw(k, l) = std::stod(cells[4]);
        }
        else
            throw std::invalid_argument("channel csv: unrecognised row '" + cells[0] + "'");
    }
    ch.strongest_bs.resize(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k)
    {
        Eigen::Index best = 0;
        ch.avg_rx_power_mw.row(k).maxCoeff(&best);
        ch.strongest_bs[k] = static_cast<int>(best);
    }
    return ch;
}

} // namespace cran
