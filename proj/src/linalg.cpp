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

#include "cran/linalg.hpp"

#include <cmath>

namespace cran
{

double ridge_for(const Eigen::MatrixXcd &M)
{
    const double dim = static_cast<double>(std::max<Eigen::Index>(M.rows(), 1));
    const double tr = M.diagonal().real().cwiseAbs().sum();
    return 1e-12 * (tr > 0.0 ? tr : 1.0) / dim;
}

bool cholesky_in_place(Eigen::MatrixXcd &M)
{
    const Eigen::Index n = M.rows();
    for (Eigen::Index j = 0; j < n; ++j)
    {
        const double d = M(j, j).real() - M.row(j).head(j).squaredNorm();
        if (!(d > 0.0))
            return false;
        const double l = std::sqrt(d);
        M(j, j) = l;
        const Eigen::Index m = n - j - 1;
        if (m > 0)
        {
            M.col(j).tail(m).noalias() -= M.bottomLeftCorner(m, j) * M.row(j).head(j).adjoint();
            M.col(j).tail(m) /= l;
        }
    }
    return true;
}

namespace
{

Eigen::LLT<Eigen::MatrixXcd> factor(const Eigen::MatrixXcd &M)
{
    if (M.rows() != M.cols())
        throw std::invalid_argument("solve_hpd: matrix is not square");
    Eigen::LLT<Eigen::MatrixXcd> llt(M);
    if (llt.info() == Eigen::Success)
        return llt;
    Eigen::MatrixXcd R = M;
    R.diagonal().array() += ridge_for(M);
    llt.compute(R);
    if (llt.info() != Eigen::Success)
        throw NumericalError("solve_hpd: matrix is not positive definite after ridge regularization");
    return llt;
}

} // namespace

Eigen::VectorXcd solve_hpd(const Eigen::MatrixXcd &M, const Eigen::VectorXcd &v)
{
    if (v.size() != M.rows())
        throw std::invalid_argument("solve_hpd: dimension mismatch");
    return factor(M).solve(v);
}

Eigen::MatrixXcd solve_hpd_columns(const Eigen::MatrixXcd &M, const Eigen::MatrixXcd &V)
{
    if (V.rows() != M.rows())
        throw std::invalid_argument("solve_hpd: dimension mismatch");
    return factor(M).solve(V);
}

Eigen::MatrixXcd inverse_hpd(const Eigen::MatrixXcd &M)
{
    return factor(M).solve(Eigen::MatrixXcd::Identity(M.rows(), M.cols()));
}

} // namespace cran
