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

#include "cran/channel.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace cran
{

/// Per-user quadratic term w^H A w - Re{b^H w}.
struct HermitianForm
{
    Eigen::MatrixXcd A;
    Eigen::VectorXcd b;
};

enum class ConstraintKind
{
    power,
    backhaul,
    fronthaul
};

// Contribution `linear * q - log_coeff * log(q)` of auxiliary variable q to a
// constraint. log_coeff > 0 requires linear > 0 so the minimizer in q exists.
struct AuxTerm
{
    int variable = 0;
    double linear = 0.0;
    double log_coeff = 0.0;
};

/// Diagonal quadratic constraint
///   sum_k sum_{i in support} weights(i - first, k) |w_k[i]|^2 + aux terms <= bound
/// over the contiguous coefficient range [first, first + weights.rows()).
struct QuadraticConstraint
{
    int first = 0;
    Eigen::MatrixXd weights; // support x users, nonnegative
    double bound = 0.0;
    ConstraintKind kind = ConstraintKind::power;
    std::vector<AuxTerm> aux;
    int tag = -1; // caller-side identifier (antenna or BS index)
};

/// Scalar variable entering the objective as cost * q, with q >= floor.
struct AuxVariable
{
    double cost = 0.0;
    double floor = 0.0;
    std::optional<double> fixed;
};

struct QcqpProblem
{
    std::vector<HermitianForm> forms;
    std::vector<QuadraticConstraint> constraints;
    std::vector<AuxVariable> aux;
    BoolArray pinned; // coefficients x users; true forces w_k[i] = 0. Empty = none.

    int num_coefficients() const { return forms.empty() ? 0 : static_cast<int>(forms.front().b.size()); }
    int num_users() const { return static_cast<int>(forms.size()); }
};

struct QcqpOptions
{
    int max_iterations = 500;
    // Projected-gradient tolerance of the dual, relative to each bound.
    double tolerance = 1e-10;
    // Multipliers from a previous solve of a problem with the same constraint list.
    const Eigen::VectorXd *warm_start = nullptr;
};

struct QcqpSolution
{
    Eigen::MatrixXcd w; // coefficients x users
    Eigen::VectorXd q;  // auxiliary variables
    Eigen::VectorXd multipliers;
    Eigen::VectorXd values; // constraint left-hand sides at (w, q)
    double objective = 0.0;
    double dual_value = 0.0;
    int iterations = 0;
    bool converged = false;
    double max_violation = 0.0;   // max_j (value - bound)_+ / |bound|
    double stationarity = 0.0;    // max_k ||(A_k + D_k) w_k - b_k / 2|| / ||b_k / 2||
    double complementarity = 0.0; // max_j lambda_j |value - bound|, bound-normalized
};

double qcqp_objective(const QcqpProblem &problem, const Eigen::MatrixXcd &w, const Eigen::VectorXd &q);

double constraint_value(const QuadraticConstraint &c, const Eigen::MatrixXcd &w, const Eigen::VectorXd &q);

/// Minimizes sum_k w_k^H A_k w_k - Re{b_k^H w_k} + sum_v cost_v q_v subject to
/// the diagonal constraints, by projected Newton ascent on the Lagrange dual.
/// For given multipliers the primal minimizer is the per-user closed form
/// w_k = (A_k + D_k)^{-1} b_k / 2 and q_v = G_v / S_v (clamped at the floor).
/// Throws std::invalid_argument when the problem is trivially infeasible
/// (negative bound without auxiliary terms).
QcqpSolution solve_qcqp(const QcqpProblem &problem, const QcqpOptions &options = {});

} // namespace cran
