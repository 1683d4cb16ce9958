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

#include "cran/qcqp.hpp"

#include "cran/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cran
{

double constraint_value(const QuadraticConstraint &c, const Eigen::MatrixXcd &w, const Eigen::VectorXd &q)
{
    double v = (c.weights.array() * w.middleRows(c.first, c.weights.rows()).array().abs2()).sum();
    for (const auto &t : c.aux)
    {
        const double qv = q(t.variable);
        v += t.linear * qv;
        if (t.log_coeff != 0.0)
            v -= t.log_coeff * std::log(qv);
    }
    return v;
}

double qcqp_objective(const QcqpProblem &problem, const Eigen::MatrixXcd &w, const Eigen::VectorXd &q)
{
    double f = 0.0;
    for (int k = 0; k < problem.num_users(); ++k)
    {
        const auto &form = problem.forms[k];
        const Eigen::VectorXcd wk = w.col(k);
        f += (wk.adjoint() * form.A * wk).value().real() - form.b.dot(wk).real();
    }
    for (std::size_t v = 0; v < problem.aux.size(); ++v)
        f += problem.aux[v].cost * q(static_cast<Eigen::Index>(v));
    return f;
}

namespace
{

// Active constraint after normalization: weights and aux terms divided by
// `scale` so that the bound is 1 (or the raw bound when aux terms are present).
struct ActiveConstraint
{
    int index = 0;
    int first = 0;
    Eigen::MatrixXd weights;
    double bound = 0.0;
    double scale = 1.0;
    std::vector<AuxTerm> aux;
};

struct DualPoint
{
    Eigen::MatrixXcd w;
    Eigen::VectorXd q;
    double value = 0.0;
    double magnitude = 0.0; // sum of absolute terms, for roundoff allowances
    Eigen::VectorXd gradient;
    Eigen::VectorXd quadratic; // weighted |w|^2 part of each active constraint
    Eigen::MatrixXd hessian; // negative semidefinite
};

class DualProblem
{
  public:
    DualProblem(const QcqpProblem &problem) : problem_(problem)
    {
        T_ = problem.num_coefficients();
        K_ = problem.num_users();
        for (const auto &f : problem.forms)
            if (f.A.rows() != T_ || f.A.cols() != T_ || f.b.size() != T_)
                throw std::invalid_argument("solve_qcqp: inconsistent form dimensions");
        pinned_ = problem.pinned.size() == 0 ? BoolArray::Constant(T_, K_, false) : problem.pinned;
        if (pinned_.rows() != T_ || pinned_.cols() != K_)
            throw std::invalid_argument("solve_qcqp: pinned mask has wrong shape");

        for (const auto &c : problem.constraints)
        {
            if (c.first < 0 || c.first + c.weights.rows() > T_ || c.weights.cols() != K_)
                throw std::invalid_argument("solve_qcqp: constraint support out of range");
            if ((c.weights.array() < 0.0).any())
                throw std::invalid_argument("solve_qcqp: negative constraint weight");
            for (const auto &t : c.aux)
                if (t.variable < 0 || t.variable >= static_cast<int>(problem.aux.size()) ||
                    (t.log_coeff > 0.0 && t.linear <= 0.0) || t.log_coeff < 0.0 || t.linear < 0.0)
                    throw std::invalid_argument("solve_qcqp: malformed auxiliary term");
        }

        // A zero bound without aux terms forces every weighted coefficient to zero.
        for (const auto &c : problem.constraints)
            if (c.aux.empty() && c.bound == 0.0)
                for (int k = 0; k < K_; ++k)
                    for (int i = 0; i < c.weights.rows(); ++i)
                        if (c.weights(i, k) > 0.0)
                            pinned_(c.first + i, k) = true;

        for (int j = 0; j < static_cast<int>(problem.constraints.size()); ++j)
        {
            const auto &c = problem.constraints[j];
            if (std::isinf(c.bound) && c.bound > 0.0)
                continue;
            if (c.aux.empty())
            {
                if (c.bound < 0.0)
                    throw std::invalid_argument("solve_qcqp: negative bound on a nonnegative quantity");
                if (c.bound == 0.0)
                    continue;
                bool any = false;
                for (int k = 0; k < K_ && !any; ++k)
                    for (int i = 0; i < c.weights.rows(); ++i)
                        if (c.weights(i, k) > 0.0 && !pinned_(c.first + i, k))
                        {
                            any = true;
                            break;
                        }
                if (!any)
                    continue;
            }
            ActiveConstraint a;
            a.index = j;
            a.first = c.first;
            a.scale = c.aux.empty() ? 1.0 / c.bound : 1.0;
            a.weights = c.weights * a.scale;
            a.bound = c.bound * a.scale;
            a.aux = c.aux;
            for (auto &t : a.aux)
            {
                t.linear *= a.scale;
                t.log_coeff *= a.scale;
            }
            active_.push_back(std::move(a));
        }

        for (const auto &v : problem.aux)
            if (!v.fixed && !(v.floor > 0.0))
                throw std::invalid_argument("solve_qcqp: free auxiliary variable needs a positive floor");

        ridge_.resize(K_);
        for (int k = 0; k < K_; ++k)
            ridge_[k] = ridge_for(problem.forms[k].A);
    }

    int size() const { return static_cast<int>(active_.size()); }
    const std::vector<ActiveConstraint> &active() const { return active_; }
    const BoolArray &pinned() const { return pinned_; }

    Eigen::MatrixXcd system(int k, const Eigen::VectorXd &lambda) const
    {
        Eigen::MatrixXcd M = problem_.forms[k].A;
        M.diagonal().array() += ridge_[k];
        for (int j = 0; j < size(); ++j)
        {
            const auto &a = active_[j];
            if (lambda(j) == 0.0)
                continue;
            for (int i = 0; i < a.weights.rows(); ++i)
                M(a.first + i, a.first + i) += lambda(j) * a.weights(i, k);
        }
        for (int i = 0; i < T_; ++i)
            if (pinned_(i, k))
            {
                M.row(i).setZero();
                M.col(i).setZero();
                M(i, i) = 1.0;
            }
        return M;
    }

    Eigen::VectorXcd rhs(int k) const
    {
        Eigen::VectorXcd b = 0.5 * problem_.forms[k].b;
        for (int i = 0; i < T_; ++i)
            if (pinned_(i, k))
                b(i) = 0.0;
        return b;
    }

    DualPoint evaluate(const Eigen::VectorXd &lambda, bool second_order) const
    {
        DualPoint p;
        const int J = size();
        p.w.resize(T_, K_);
        if (second_order)
            p.hessian = Eigen::MatrixXd::Zero(J, J);

        Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(T_, K_);
        for (int k = 0; k < K_; ++k)
            diag.col(k).setConstant(ridge_[k]);
        for (int j = 0; j < J; ++j)
            if (lambda(j) != 0.0)
                diag.middleRows(active_[j].first, active_[j].weights.rows()) += lambda(j) * active_[j].weights;

        Eigen::MatrixXcd M(T_, T_), Minv(T_, T_);
        Eigen::MatrixXd Gw(T_, T_), GA(T_, J);
        Eigen::VectorXcd x(T_);
        for (int k = 0; k < K_; ++k)
        {
            x = rhs(k);
            if (x.squaredNorm() == 0.0)
            {
                p.w.col(k).setZero();
                continue;
            }
            M = problem_.forms[k].A;
            M.diagonal().real() += diag.col(k);
            for (int i = 0; i < T_; ++i)
                if (pinned_(i, k))
                {
                    M.row(i).setZero();
                    M.col(i).setZero();
                    M(i, i) = 1.0;
                }
            if (!cholesky_in_place(M))
                throw NumericalError("solve_qcqp: per-user system is not positive definite");
            const auto L = M.triangularView<Eigen::Lower>();
            L.solveInPlace(x);
            const double term = -x.squaredNorm(); // -b^H M^{-1} b
            L.adjoint().solveInPlace(x);
            p.w.col(k) = x;
            p.value += term;
            p.magnitude += std::abs(term);
            if (second_order && J > 0)
            {
                // With Z(:, j) = weights_j(:, k) .* w_k on the support of j,
                // the block is Z^H M^{-1} Z = A^T Gw A for Gw = diag(w)^H M^{-1} diag(w).
                Minv.setIdentity();
                L.solveInPlace(Minv);
                L.adjoint().solveInPlace(Minv);
                Gw = (x.conjugate().asDiagonal() * Minv * x.asDiagonal()).real();
                GA.setZero();
                for (int j = 0; j < J; ++j)
                {
                    const auto &a = active_[j];
                    for (int i = 0; i < a.weights.rows(); ++i)
                        if (a.weights(i, k) != 0.0)
                            GA.col(j) += a.weights(i, k) * Gw.col(a.first + i);
                }
                for (int j = 0; j < J; ++j)
                {
                    const auto &a = active_[j];
                    for (int i = 0; i < a.weights.rows(); ++i)
                        if (a.weights(i, k) != 0.0)
                            p.hessian.row(j) -= 2.0 * a.weights(i, k) * GA.row(a.first + i);
                }
            }
        }

        p.q.resize(static_cast<Eigen::Index>(problem_.aux.size()));
        std::vector<double> S(problem_.aux.size()), G(problem_.aux.size(), 0.0);
        for (std::size_t v = 0; v < problem_.aux.size(); ++v)
            S[v] = problem_.aux[v].cost;
        for (int j = 0; j < J; ++j)
            for (const auto &t : active_[j].aux)
            {
                S[t.variable] += lambda(j) * t.linear;
                G[t.variable] += lambda(j) * t.log_coeff;
            }
        std::vector<bool> interior(problem_.aux.size(), false);
        for (std::size_t v = 0; v < problem_.aux.size(); ++v)
        {
            const auto &var = problem_.aux[v];
            double q;
            if (var.fixed)
                q = *var.fixed;
            else if (G[v] > 0.0 && S[v] > 0.0 && G[v] / S[v] > var.floor)
            {
                q = G[v] / S[v];
                interior[v] = true;
            }
            else
                q = var.floor;
            p.q(static_cast<Eigen::Index>(v)) = q;
            const double term = S[v] * q - (G[v] != 0.0 ? G[v] * std::log(q) : 0.0);
            p.value += term;
            p.magnitude += std::abs(S[v] * q) + std::abs(G[v] != 0.0 ? G[v] * std::log(q) : 0.0);
        }

        p.gradient.resize(J);
        p.quadratic.resize(J);
        for (int j = 0; j < J; ++j)
        {
            const auto &a = active_[j];
            double s = (a.weights.array() * p.w.middleRows(a.first, a.weights.rows()).array().abs2()).sum();
            p.quadratic(j) = s;
            for (const auto &t : a.aux)
            {
                const double qv = p.q(t.variable);
                s += t.linear * qv - (t.log_coeff != 0.0 ? t.log_coeff * std::log(qv) : 0.0);
            }
            p.gradient(j) = s - a.bound;
            p.value -= lambda(j) * a.bound;
            p.magnitude += std::abs(lambda(j) * a.bound);
        }

        if (second_order)
            for (std::size_t v = 0; v < problem_.aux.size(); ++v)
            {
                if (!interior[v])
                    continue;
                Eigen::VectorXd d = Eigen::VectorXd::Zero(J);
                for (int j = 0; j < J; ++j)
                    for (const auto &t : active_[j].aux)
                        if (t.variable == static_cast<int>(v))
                            d(j) += G[v] * t.linear - S[v] * t.log_coeff;
                p.hessian.noalias() -= d * d.transpose() / (G[v] * S[v] * S[v]);
            }
        return p;
    }

  private:
    const QcqpProblem &problem_;
    int T_ = 0;
    int K_ = 0;
    BoolArray pinned_;
    std::vector<ActiveConstraint> active_;
    std::vector<double> ridge_;
};

double projected_gradient_norm(const Eigen::VectorXd &lambda, const Eigen::VectorXd &grad)
{
    double r = 0.0;
    for (int j = 0; j < lambda.size(); ++j)
    {
        const double g = lambda(j) > 0.0 ? grad(j) : std::max(grad(j), 0.0);
        r = std::max(r, std::abs(g));
    }
    return r;
}

} // namespace

QcqpSolution solve_qcqp(const QcqpProblem &problem, const QcqpOptions &options)
{
    const DualProblem dual(problem);
    const int J = dual.size();
    const auto &active = dual.active();

    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(J);
    const bool warm = options.warm_start && options.warm_start->size() == static_cast<Eigen::Index>(problem.constraints.size());
    for (int j = 0; j < J; ++j)
    {
        if (warm)
            lambda(j) = std::max(0.0, (*options.warm_start)(active[j].index) / active[j].scale);
        else if (!active[j].aux.empty())
            lambda(j) = 1.0;
    }
    std::vector<double> tol_scale(static_cast<std::size_t>(J), 1.0);
    for (int j = 0; j < J; ++j)
        tol_scale[j] = std::max(1.0, std::abs(active[j].bound));

    auto scaled_residual = [&](const Eigen::VectorXd &lam, const Eigen::VectorXd &grad) {
        Eigen::VectorXd g = grad;
        for (int j = 0; j < J; ++j)
            g(j) /= tol_scale[j];
        return projected_gradient_norm(lam, g);
    };

    DualPoint point = dual.evaluate(lambda, true);
    int iter = 0;
    bool converged = false;
    constexpr double kArmijo = 1e-4;
    for (; iter < options.max_iterations; ++iter)
    {
        if (scaled_residual(lambda, point.gradient) <= options.tolerance)
        {
            converged = true;
            break;
        }

        std::vector<int> freeset;
        for (int j = 0; j < J; ++j)
            if (lambda(j) > 0.0 || point.gradient(j) > 0.0)
                freeset.push_back(j);
        const int F = static_cast<int>(freeset.size());

        Eigen::MatrixXd Hf(F, F);
        Eigen::VectorXd gf(F);
        for (int a = 0; a < F; ++a)
        {
            gf(a) = point.gradient(freeset[a]);
            for (int b = 0; b < F; ++b)
                Hf(a, b) = -point.hessian(freeset[a], freeset[b]);
        }
        const double max_diag = F > 0 ? Hf.diagonal().maxCoeff() : 0.0;
        const double floor = std::max(1e-12 * max_diag, std::numeric_limits<double>::min());
        for (int a = 0; a < F; ++a)
            Hf(a, a) = std::max(Hf(a, a), 0.0) + floor;

        auto attempt = [&](const Eigen::VectorXd &direction) -> bool {
            double t = 1.0;
            for (int ls = 0; ls < 60; ++ls, t *= 0.5)
            {
                Eigen::VectorXd trial = lambda;
                for (int a = 0; a < F; ++a)
                    trial(freeset[a]) = std::max(0.0, lambda(freeset[a]) + t * direction(a));
                if ((trial - lambda).lpNorm<Eigen::Infinity>() == 0.0)
                    return false;
                DualPoint next = dual.evaluate(trial, false);
                const double predicted = point.gradient.dot(trial - lambda);
                const double slack = 1e-13 * std::max(point.magnitude, next.magnitude);
                if (next.value >= point.value + kArmijo * predicted - slack)
                {
                    lambda = trial;
                    point = dual.evaluate(lambda, true);
                    return true;
                }
            }
            return false;
        };

        Eigen::LDLT<Eigen::MatrixXd> ldlt(Hf);
        if (ldlt.info() == Eigen::Success)
        {
            // The quadratic part behaves like 1/lambda^2 far from the optimum.
            // Newton on s^{-1/2} - t^{-1/2}, with s the quadratic part and t
            // the remaining budget, takes that into account.
            Eigen::VectorXd gs = gf;
            bool changed = false;
            for (int a = 0; a < F; ++a)
            {
                const double s = point.quadratic(freeset[a]);
                const double t = s - gf(a);
                if (s > 0.0 && t > 0.0 && s > 1e-3 * t)
                {
                    gs(a) = 2.0 * s * (std::sqrt(s / t) - 1.0);
                    changed = true;
                }
            }
            if (changed)
            {
                const Eigen::VectorXd secular = ldlt.solve(gs);
                if (secular.allFinite() && secular.dot(gf) > 0.0 && attempt(secular))
                    continue;
            }
            const Eigen::VectorXd newton = ldlt.solve(gf);
            if (newton.allFinite() && attempt(newton))
                continue;
        }
        Eigen::VectorXd scaled = gf.cwiseQuotient(Hf.diagonal());
        if (!attempt(scaled))
            break;
    }

    QcqpSolution sol;
    sol.w = point.w;
    sol.q = point.q;
    sol.iterations = iter;
    sol.converged = converged;
    sol.dual_value = point.value;
    sol.objective = qcqp_objective(problem, sol.w, sol.q);

    const int C = static_cast<int>(problem.constraints.size());
    sol.multipliers = Eigen::VectorXd::Zero(C);
    sol.values.resize(C);
    for (int j = 0; j < J; ++j)
        sol.multipliers(active[j].index) = lambda(j) * active[j].scale;
    for (int c = 0; c < C; ++c)
    {
        const auto &con = problem.constraints[c];
        sol.values(c) = constraint_value(con, sol.w, sol.q);
        if (std::isinf(con.bound))
            continue;
        const double denom = con.bound != 0.0 ? std::abs(con.bound) : 1.0;
        sol.max_violation = std::max(sol.max_violation, (sol.values(c) - con.bound) / denom);
        sol.complementarity =
            std::max(sol.complementarity, sol.multipliers(c) * std::abs(sol.values(c) - con.bound));
    }
    sol.max_violation = std::max(sol.max_violation, 0.0);

    for (int k = 0; k < problem.num_users(); ++k)
    {
        const Eigen::MatrixXcd M = dual.system(k, lambda);
        const Eigen::VectorXcd b = dual.rhs(k);
        const double nb = b.norm();
        if (nb == 0.0)
            continue;
        sol.stationarity = std::max(sol.stationarity, (M * sol.w.col(k) - b).norm() / nb);
    }
    return sol;
}

} // namespace cran
