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

#include "cran/experiment.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cran
{

/// Aggregates of one strategy at one sweep point, as stored in summary.json.
struct RunSummary
{
    std::string strategy;
    bool backhaul_ignored = false;
    double macro_bps = 0.0; // +inf when the backhaul is ignored
    double pico_bps = 0.0;
    double total_backhaul_bps = 0.0;
    std::string directory; // relative to the report root
    double sum_rate_bps = 0.0;
    double mean_user_rate_bps = 0.0;
    double p10_bps = 0.0;
    double p50_bps = 0.0;
    double p90_bps = 0.0;
    double backhaul_data_bps = 0.0;        // mean over slots of the network total
    double backhaul_compression_bps = 0.0; // same
    double backhaul_utilization = 0.0;     // (data + compression) / capacity, 0 when unlimited
    double mean_cluster_size = 0.0;        // serving BSs per served user
    int slots = 0;
    int slots_converged = 0;
    long long outer_iterations = 0;
    long long inner_iterations = 0;
    long long qcqp_solves = 0;
    long long qcqp_unconverged = 0;
    int repairs = 0;
    int mode_violations = 0;
    double max_power_violation = 0.0;
    double max_backhaul_violation = 0.0;
    std::vector<std::string> warnings; // distinct, sorted
};

struct ReportSummary
{
    std::string source; // directory the report was loaded from
    std::uint64_t scenario_hash = 0;
    std::vector<std::uint64_t> seeds;
    int num_slots = 0;
    std::vector<RunSummary> runs;
};

ReportSummary summarize(const ExperimentResult &result);

/// Writes <dir>/summary.json and, for every run,
/// <dir>/<strategy>/<point>/{cdf.csv, slots.jsonl, summary.json}.
/// The bytes depend only on the result, never on timing or paths.
void write_report(const ExperimentResult &result, const std::string &dir);

/// Reads <dir>/summary.json. Throws std::runtime_error on a missing or
/// malformed file.
ReportSummary load_report(const std::string &dir);

/// Sum rate against total backhaul for every strategy of every report.
struct ComparisonEntry
{
    std::string label; // strategy name, suffixed with the report index on clashes
    bool backhaul_ignored = false;
    std::vector<std::optional<RunSummary>> at; // per comparison point, empty when not run
};

struct Crossover
{
    std::string reference;
    std::string other;
    bool found = false;
    double total_backhaul_bps = 0.0; // where the sum-rate difference changes sign
};

struct Comparison
{
    std::vector<ReportSummary> reports;
    std::vector<double> total_backhaul_bps; // ascending
    std::vector<std::pair<double, double>> points;
    std::vector<ComparisonEntry> entries;
    std::vector<Crossover> crossovers; // first entry against every other
};

/// Needs at least two strategies in total and identical scenario hashes, seed
/// lists and slot counts; throws std::invalid_argument otherwise.
Comparison compare_strategies(std::vector<ReportSummary> reports);

/// Table of sum rates, percentile deltas against the first entry, and
/// crossover estimates.
std::string format_comparison(const Comparison &comparison);

/// Byte-exact text rendering of a double (shortest round-trip form).
std::string format_number(double v);

} // namespace cran
