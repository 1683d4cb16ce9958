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
#include "cran/scheduler.hpp"
#include "cran/strategy.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cran
{

/// Backhaul capacities of one sweep point. Both infinite for the strategies
/// that ignore the backhaul.
struct SweepPoint
{
    double macro_bps = 0.0;
    double pico_bps = 0.0;

    bool unlimited() const;
    /// Directory-safe name, e.g. "macro40M-pico20M" or "unlimited".
    std::string label() const;
    /// Sum of the capacities of every BS in the scenario.
    double total_bps(const NetworkConfig &cfg) const;
};

struct ExperimentSpec
{
    NetworkConfig scenario;
    std::vector<StrategyKind> strategies;
    std::vector<SweepPoint> backhaul_sweep; // empty: the scenario's own capacities
    int num_slots = 50;
    std::vector<std::uint64_t> seeds = {1};
    double pf_window = 20.0;
    std::string output_dir = "out";
    int workers = 0; // 0: one per hardware thread
    StrategyOptions options;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    /// Sweep points actually run for a strategy.
    std::vector<SweepPoint> points_for(StrategyKind kind) const;
};

/// Scenario fields plus
///   strategies     = data-sharing, compression-adaptive, ...
///   backhaul_sweep = 40M/20M, 80M/40M   (macro/pico pairs)
///   slots          = 50
///   seeds          = 1, 2, 3  or  1-5
///   pf_window      = 20
///   output_dir     = out
///   workers        = 0
/// Unknown keys and bad values raise ConfigError with the line number.
ExperimentSpec parse_experiment_spec(const std::string &text);

/// Thrown when a strategy reports an infeasible or non-finite solution.
class ExperimentFailure : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Per-slot record kept for the reports; beamformers are not retained.
struct SlotLog
{
    std::uint64_t seed = 0;
    int slot = 0;
    SlotResult result;
    Feasibility feasibility;
};

/// One strategy at one sweep point over every seed.
struct StrategyRun
{
    StrategyKind strategy = StrategyKind::data_sharing;
    SweepPoint point;
    std::vector<SlotLog> slots;                 // seed-major, slot-minor
    std::vector<Eigen::VectorXd> user_mean_bps; // per seed
    RateCdf cdf;                                // over the users of every seed
    double sum_rate_bps = 0.0;                  // mean over seeds and slots
};

struct ExperimentResult
{
    ExperimentSpec spec;
    std::vector<StrategyRun> runs; // strategy order of the spec, then sweep order
    std::uint64_t scenario_hash = 0;

    /// Run for a strategy at a point; strategies that ignore the backhaul
    /// match any point. Returns nullptr when absent.
    const StrategyRun *find(StrategyKind kind, const SweepPoint &point) const;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string &bytes);

/// Canonical text of everything that fixes the channel streams and the
/// operating points: scenario without its seed, sweep, slot count and PF window.
std::string scenario_fingerprint(const ExperimentSpec &spec);

using ProgressFn = std::function<void(const std::string &)>;

/// Runs every (strategy, sweep point, seed) chain on a worker pool. Strategies
/// at a point see the same channel realizations, slot by slot. Throws
/// ExperimentFailure on the first infeasible or non-finite slot.
ExperimentResult run_experiment(const ExperimentSpec &spec, const ProgressFn &progress = {});

} // namespace cran
