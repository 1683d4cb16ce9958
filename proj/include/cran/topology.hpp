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

#include "cran/config.hpp"

#include <Eigen/Dense>

#include <vector>

namespace cran
{

struct Point
{
    double x = 0.0; // km
    double y = 0.0; // km
};

struct BaseStation
{
    Point position;
    Tier tier = Tier::macro;
    int cell = 0;
    int first_antenna = 0; // column offset into the network-wide channel
    int num_antennas = 1;
};

/// Minimum link distance used by the path-loss model.
inline constexpr double kMinDistanceKm = 0.01;

/// Deterministic path loss (dB) before shadowing, fading and antenna gain.
/// Distances below kMinDistanceKm are clamped.
double path_loss_db(double distance_km, Tier tier);

/// A dropped network: BS and user positions on a wrapped-around hexagonal
/// layout, plus the per-link log-normal shadowing for this drop.
struct Topology
{
    std::vector<BaseStation> base_stations;
    std::vector<Point> users;
    std::vector<int> user_cell;
    std::vector<Point> cell_centers;
    std::vector<Point> wraparound_offsets; // includes the zero offset
    Eigen::MatrixXd shadowing_db;          // users x BSs

    int num_bs() const { return static_cast<int>(base_stations.size()); }
    int num_users() const { return static_cast<int>(users.size()); }
    int total_antennas() const;

    /// Wrapped-around distance: minimum over all mirror offsets.
    double distance(const Point &a, const Point &b) const;

    /// Large-scale gain in dB for every (user, BS) link: antenna gain minus
    /// path loss minus shadowing.
    Eigen::MatrixXd link_gain_db(const NetworkConfig &cfg) const;
};

/// Lattice coordinates (i, j) of the wraparound cluster for a cell count, or
/// throws std::invalid_argument when no hexagonal wraparound exists.
std::pair<int, int> wraparound_generator(int num_cells);

Topology build_topology(const NetworkConfig &cfg);

/// True when `p` lies in the flat-topped hexagon of circumradius `radius`
/// centred at `center`.
bool inside_hexagon(const Point &p, const Point &center, double radius);

} // namespace cran
