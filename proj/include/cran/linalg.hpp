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

#include <Eigen/Dense>

#include <stdexcept>

namespace cran
{

class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Solves M x = v for Hermitian positive-definite M by Cholesky. When the
/// factorization fails a ridge of 1e-12 * trace(M) / dim is added once before
/// giving up with NumericalError.
Eigen::VectorXcd solve_hpd(const Eigen::MatrixXcd &M, const Eigen::VectorXcd &v);

/// Same, for several right-hand sides.
Eigen::MatrixXcd solve_hpd_columns(const Eigen::MatrixXcd &M, const Eigen::MatrixXcd &V);

/// Inverse of a Hermitian positive-definite matrix, with the same ridge policy.
Eigen::MatrixXcd inverse_hpd(const Eigen::MatrixXcd &M);

double ridge_for(const Eigen::MatrixXcd &M);

/// Overwrites the lower triangle of Hermitian M with its Cholesky factor L
/// (M = L L^H). The strict upper triangle is left untouched. Returns false
/// when M is not positive definite.
bool cholesky_in_place(Eigen::MatrixXcd &M);

} // namespace cran
