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

#include "cran/slot_result.hpp"

namespace cran
{

struct DataSharingOptions
{
    int max_outer = 30;
    int max_inner = 100;
    double tolerance = 1e-4;          // relative change of the weighted sum rate
    double threshold_relative = 1e-6; // link threshold as a fraction of antenna power
    bool enforce_exact = true;        // threshold and repair before reporting
};

/// Cluster weights beta_{l,k} = 1 / (||w_{l,k}||^2 + tau), BSs x users.
Eigen::MatrixXd update_cluster_weights(const AntennaLayout &layout, const Beamformers &W, double tau);

/// Equal-gain matched-filter start: every antenna splits its power equally
/// among the users it may serve and aligns the phase with the user's dominant
/// channel direction.
Beamformers initial_beamformers(const SlotProblem &problem, const BoolArray &pins);

/// Weighted sum rate maximization under per-antenna power and per-BS
/// backhaul, with reweighted-l1 cluster sparsity. The reported solution is
/// hard-thresholded and repaired until the indicator backhaul accounting fits.
SlotResult optimize_data_sharing(const SlotProblem &problem, const DataSharingOptions &options = {});

} // namespace cran
