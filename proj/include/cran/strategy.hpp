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

#include "cran/compression.hpp"
#include "cran/data_sharing.hpp"
#include "cran/hybrid.hpp"

namespace cran
{

struct StrategyOptions
{
    DataSharingOptions data_sharing;
    CompressionOptions compression;
    HybridOptions hybrid;
    int baseline_max_iterations = 100;
    double baseline_tolerance = 1e-4;
};

/// Joint transmission from every BS with known CSI, per-antenna power only
/// (backhaul is not constrained).
SlotResult optimize_full_cooperation(const SlotProblem &problem, const StrategyOptions &options = {});

/// Each user is served by its strongest BS only, per-antenna power only.
SlotResult optimize_no_cooperation(const SlotProblem &problem, const StrategyOptions &options = {});

SlotResult run_strategy(StrategyKind kind, const SlotProblem &problem, const StrategyOptions &options = {});

/// Strategies that ignore the backhaul limit and are therefore run once per
/// slot rather than once per backhaul setting.
bool ignores_backhaul(StrategyKind kind);

} // namespace cran
