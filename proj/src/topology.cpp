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

#include "cran/topology.hpp"

#include "cran/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cran
{

namespace
{

constexpr double kDeg = std::numbers::pi / 180.0;

// Flat-topped hexagons tile with neighbouring centres at 30, 90, ... degrees.
Point lattice_point(double spacing, int m, int n)
{
    const double a1x = spacing * std::cos(30.0 * kDeg);
    const double a1y = spacing * std::sin(30.0 * kDeg);
    return {m * a1x, m * a1y + n * spacing};
}

Point rotate(const Point &p, double angle_rad)
{
    const double c = std::cos(angle_rad), s = std::sin(angle_rad);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

double norm(const Point &p)
{
    return std::hypot(p.x, p.y);
}

} // namespace

double path_loss_db(double distance_km, Tier tier)
{
    const double d = std::max(distance_km, kMinDistanceKm);
    if (tier == Tier::macro)
        return 128.1 + 37.6 * std::log10(d);
    return 140.7 + 36.7 * std::log10(d);
}

std::pair<int, int> wraparound_generator(int num_cells)
{
    for (int i = 1; i * i <= num_cells; ++i)
        for (int j = i; j >= 0; --j)
            if (i * i + i * j + j * j == num_cells)
                return {i, j};
    throw std::invalid_argument("num_cells = " + std::to_string(num_cells) +
                                " has no hexagonal wraparound layout (valid: 1, 3, 4, 7, 9, 12, 13, 19, ...)");
}

bool inside_hexagon(const Point &p, const Point &center, double radius)
{
    const double dx = std::abs(p.x - center.x);
    const double dy = std::abs(p.y - center.y);
    const double s3 = std::sqrt(3.0);
    return dy <= s3 / 2.0 * radius && s3 * dx + dy <= s3 * radius;
}

int Topology::total_antennas() const
{
    int t = 0;
    for (const auto &bs : base_stations)
        t += bs.num_antennas;
    return t;
}

double Topology::distance(const Point &a, const Point &b) const
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto &o : wraparound_offsets)
        best = std::min(best, std::hypot(a.x - b.x + o.x, a.y - b.y + o.y));
    return best;
}

Eigen::MatrixXd Topology::link_gain_db(const NetworkConfig &cfg) const
{
    Eigen::MatrixXd g(num_users(), num_bs());
    for (int k = 0; k < num_users(); ++k)
        for (int l = 0; l < num_bs(); ++l)
        {
            const auto &bs = base_stations[l];
            const double d = distance(users[k], bs.position);
            g(k, l) = cfg.antenna_gain_dbi - path_loss_db(d, bs.tier) - shadowing_db(k, l);
        }
    return g;
}

Topology build_topology(const NetworkConfig &cfg)
{
    cfg.validate();
    const auto [gi, gj] = wraparound_generator(cfg.num_cells);
    const double spacing = cfg.intercell_distance_km;
    const double radius = spacing / std::sqrt(3.0);

    Topology topo;

    // Super-lattice generator and its six rotations give the mirror offsets.
    const Point generator = lattice_point(spacing, gi, gj);
    topo.wraparound_offsets.push_back({0.0, 0.0});
    for (int r = 0; r < 6; ++r)
        topo.wraparound_offsets.push_back(rotate(generator, r * 60.0 * kDeg));

    // One representative per coset of the super-lattice: the lattice point
    // closest to the origin, ties broken by polar angle.
    struct Candidate
    {
        int m, n;
        Point p;
        double dist;
        double angle;
    };
    std::vector<Candidate> candidates;
    const int span = gi + gj + 1;
    for (int m = -span; m <= span; ++m)
        for (int n = -span; n <= span; ++n)
        {
            const Point p = lattice_point(spacing, m, n);
            double ang = std::atan2(p.y, p.x);
            if (ang < 0.0)
                ang += 2.0 * std::numbers::pi;
            candidates.push_back({m, n, p, norm(p), ang});
        }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) {
        if (std::abs(a.dist - b.dist) > 1e-9)
            return a.dist < b.dist;
        return a.angle < b.angle - 1e-12;
    });
    // (dm, dn) lies in the super-lattice spanned by (gi, gj) and (-gj, gi + gj)
    // iff both coordinates in that basis are integers.
    auto same_coset = [&](int dm, int dn) {
        const int n = cfg.num_cells;
        return (dm * (gi + gj) + dn * gj) % n == 0 && (dn * gi - dm * gj) % n == 0;
    };
    std::vector<std::pair<int, int>> chosen;
    for (const auto &c : candidates)
    {
        if (static_cast<int>(chosen.size()) == cfg.num_cells)
            break;
        const bool duplicate = std::any_of(chosen.begin(), chosen.end(), [&](const auto &e) {
            return same_coset(c.m - e.first, c.n - e.second);
        });
        if (!duplicate)
        {
            chosen.emplace_back(c.m, c.n);
            topo.cell_centers.push_back(c.p);
        }
    }
    if (static_cast<int>(topo.cell_centers.size()) != cfg.num_cells)
        throw std::logic_error("wraparound cell enumeration failed");

    int antenna = 0;
    auto add_bs = [&](Point p, Tier tier, int cell) {
        BaseStation bs;
        bs.position = p;
        bs.tier = tier;
        bs.cell = cell;
        bs.first_antenna = antenna;
        bs.num_antennas = cfg.antennas(tier);
        antenna += bs.num_antennas;
        topo.base_stations.push_back(bs);
    };
    for (int c = 0; c < cfg.num_cells; ++c)
    {
        const Point center = topo.cell_centers[c];
        add_bs(center, Tier::macro, c);
        const double pico_radius = spacing / 2.0 * (2.0 / 3.0);
        for (int p = 0; p < cfg.picos_per_cell; ++p)
        {
            const double ang = (90.0 + 360.0 * p / cfg.picos_per_cell) * kDeg;
            add_bs({center.x + pico_radius * std::cos(ang), center.y + pico_radius * std::sin(ang)}, Tier::pico, c);
        }
    }

    Rng drop(cfg.rng_seed, StreamPurpose::user_drop, 0);
    for (int c = 0; c < cfg.num_cells; ++c)
    {
        const Point center = topo.cell_centers[c];
        for (int u = 0; u < cfg.users_per_cell; ++u)
        {
            Point p;
            do
            {
                p.x = center.x + drop.uniform(-radius, radius);
                p.y = center.y + drop.uniform(-radius, radius) * std::sqrt(3.0) / 2.0;
            } while (!inside_hexagon(p, center, radius));
            topo.users.push_back(p);
            topo.user_cell.push_back(c);
        }
    }

    Rng shadow(cfg.rng_seed, StreamPurpose::shadowing, 0);
    topo.shadowing_db.resize(topo.num_users(), topo.num_bs());
    for (int k = 0; k < topo.num_users(); ++k)
        for (int l = 0; l < topo.num_bs(); ++l)
            topo.shadowing_db(k, l) = cfg.shadowing_std_db * shadow.normal();

    return topo;
}

} // namespace cran
