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

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace cran;
using Catch::Approx;

TEST_CASE("path loss anchors")
{
    CHECK(path_loss_db(1.0, Tier::macro) == Approx(128.1));
    CHECK(path_loss_db(1.0, Tier::pico) == Approx(140.7));
    CHECK(path_loss_db(0.1, Tier::macro) == Approx(128.1 - 37.6));
    // Clamp below the minimum distance.
    CHECK(path_loss_db(0.0, Tier::macro) == path_loss_db(kMinDistanceKm, Tier::macro));
    CHECK(path_loss_db(0.5, Tier::macro) < path_loss_db(0.6, Tier::macro));
}

TEST_CASE("default network has 7 macros, 21 picos and 210 users")
{
    const NetworkConfig cfg;
    const Topology topo = build_topology(cfg);
    CHECK(topo.num_bs() == 28);
    CHECK(topo.num_users() == 210);
    int macros = 0;
    for (const auto &bs : topo.base_stations)
        macros += bs.tier == Tier::macro;
    CHECK(macros == 7);
    CHECK(topo.wraparound_offsets.size() == 7);
    // Macros at cell centers, users inside their own hexagon.
    for (const auto &bs : topo.base_stations)
        if (bs.tier == Tier::macro)
        {
            CHECK(bs.position.x == topo.cell_centers[bs.cell].x);
            CHECK(bs.position.y == topo.cell_centers[bs.cell].y);
        }
    const double radius = cfg.intercell_distance_km / std::sqrt(3.0);
    for (int k = 0; k < topo.num_users(); ++k)
        CHECK(inside_hexagon(topo.users[k], topo.cell_centers[topo.user_cell[k]], radius));
    // Neighbouring cell centers are one intercell distance apart.
    CHECK(std::hypot(topo.cell_centers[1].x, topo.cell_centers[1].y) == Approx(0.8));
}

TEST_CASE("picos are equally spaced around the macro")
{
    const Topology topo = build_topology(NetworkConfig{});
    const auto &c = topo.cell_centers[0];
    std::vector<Point> picos;
    for (const auto &bs : topo.base_stations)
        if (bs.cell == 0 && bs.tier == Tier::pico)
            picos.push_back(bs.position);
    REQUIRE(picos.size() == 3);
    const double r = 0.8 / 3.0;
    for (const auto &p : picos)
        CHECK(std::hypot(p.x - c.x, p.y - c.y) == Approx(r));
    CHECK(std::hypot(picos[0].x - picos[1].x, picos[0].y - picos[1].y) == Approx(r * std::sqrt(3.0)));
    CHECK(std::hypot(picos[1].x - picos[2].x, picos[1].y - picos[2].y) == Approx(r * std::sqrt(3.0)));
}

TEST_CASE("macro-only network")
{
    NetworkConfig cfg;
    cfg.picos_per_cell = 0;
    CHECK(build_topology(cfg).num_bs() == 7);
}

TEST_CASE("wraparound distance is symmetric and never exceeds the direct distance")
{
    const Topology topo = build_topology(NetworkConfig{});
    for (int k = 0; k < topo.num_users(); k += 7)
        for (const auto &bs : topo.base_stations)
        {
            const Point &u = topo.users[k];
            const double d = topo.distance(u, bs.position);
            CHECK(d == Approx(topo.distance(bs.position, u)));
            CHECK(d <= std::hypot(u.x - bs.position.x, u.y - bs.position.y) + 1e-12);
        }
    // With wraparound every cell center is within one ring of every other.
    for (const auto &a : topo.cell_centers)
        for (const auto &b : topo.cell_centers)
            CHECK(topo.distance(a, b) <= 0.8 + 1e-9);
}

TEST_CASE("cell counts with and without a hexagonal wraparound")
{
    for (int n : {1, 3, 4, 7, 12, 13, 19})
    {
        NetworkConfig cfg;
        cfg.num_cells = n;
        cfg.users_per_cell = 2;
        const Topology topo = build_topology(cfg);
        CHECK(static_cast<int>(topo.cell_centers.size()) == n);
    }
    for (int n : {2, 5, 6, 8})
        CHECK_THROWS_AS(wraparound_generator(n), std::invalid_argument);
}

TEST_CASE("drops are deterministic in the seed")
{
    NetworkConfig cfg;
    const Topology a = build_topology(cfg);
    const Topology b = build_topology(cfg);
    for (int k = 0; k < a.num_users(); ++k)
    {
        CHECK(a.users[k].x == b.users[k].x);
        CHECK(a.users[k].y == b.users[k].y);
    }
    CHECK((a.shadowing_db.array() == b.shadowing_db.array()).all());
    cfg.rng_seed = 2;
    const Topology c = build_topology(cfg);
    CHECK(c.users[0].x != a.users[0].x);
}

TEST_CASE("link gain is monotone in distance without shadowing")
{
    NetworkConfig cfg;
    cfg.shadowing_std_db = 0.0;
    const Topology topo = build_topology(cfg);
    const Eigen::MatrixXd g = topo.link_gain_db(cfg);
    for (int k = 0; k < topo.num_users(); k += 5)
        for (int a = 0; a < topo.num_bs(); ++a)
            for (int b = 0; b < topo.num_bs(); ++b)
                if (topo.base_stations[a].tier == topo.base_stations[b].tier &&
                    topo.distance(topo.users[k], topo.base_stations[a].position) <
                        topo.distance(topo.users[k], topo.base_stations[b].position))
                    CHECK(g(k, a) >= g(k, b));
}
