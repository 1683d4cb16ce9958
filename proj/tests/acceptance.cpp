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

#include "cran/compression.hpp"
#include "cran/data_sharing.hpp"
#include "cran/experiment.hpp"
#include "cran/hybrid.hpp"
#include "cran/report.hpp"
#include "cran/strategy.hpp"
#include "cran/wmmse.hpp"

#include "oracles.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace cran;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

SlotProblem random_problem(std::mt19937_64 &gen, int L, int M, int K, double backhaul_bits, double gamma_q)
{
    std::uniform_real_distribution<double> gain(0.3, 2.0);
    std::vector<Eigen::MatrixXcd> H;
    for (int k = 0; k < K; ++k)
    {
        Eigen::MatrixXcd h = oracle::random_complex(gen, 1, L * M, 2.0);
        for (int l = 0; l < L; ++l)
            h.middleCols(l * M, M) *= (l == k % L ? 2.5 : gain(gen));
        H.push_back(h);
    }
    std::uniform_real_distribution<double> weight(0.2, 1.0);
    Eigen::VectorXd alpha(K);
    for (int k = 0; k < K; ++k)
        alpha(k) = weight(gen);
    alpha /= alpha.maxCoeff();
    return make_normalized_problem(AntennaLayout::uniform(L, M), std::move(H), Eigen::VectorXd::Ones(L * M),
                                   Eigen::VectorXd::Constant(L, backhaul_bits), alpha, 1.0, gamma_q, 1.0);
}

// Largest relative drop between consecutive entries of every trace.
double worst_drop(const std::vector<std::vector<double>> &traces)
{
    double worst = 0.0;
    for (const auto &t : traces)
        for (std::size_t i = 1; i < t.size(); ++i)
            worst = std::max(worst, (t[i - 1] - t[i]) / std::max(std::abs(t[i - 1]), 1e-300));
    return worst;
}

Outcome criterion_1()
{
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> bits(0.5, 6.0);
    double worst = 0.0;
    int traces = 0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const SlotProblem p = random_problem(gen, 3, 2, 4, bits(gen), 2.0);
        const SlotResult ds = optimize_data_sharing(p);
        const SlotResult comp = optimize_compression_adaptive(p);
        worst = std::max({worst, worst_drop(ds.wsr_traces), worst_drop(comp.wsr_traces)});
        traces += static_cast<int>(ds.wsr_traces.size() + comp.wsr_traces.size());
    }
    return {worst <= 1e-8, fmt("100 instances, %g inner loops, worst relative decrease %.3g (limit 1e-8)", traces,
                               std::max(worst, 0.0))};
}

Outcome criterion_2()
{
    std::mt19937_64 gen(202);
    std::uniform_int_distribution<int> dim(1, 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial)
    {
        const int T = dim(gen) + 1, N = dim(gen), K = dim(gen);
        const std::vector<Eigen::MatrixXcd> H = [&] {
            std::vector<Eigen::MatrixXcd> v;
            for (int k = 0; k < K; ++k)
                v.push_back(oracle::random_complex(gen, N, T, 0.5 + 2.0 * u(gen)));
            return v;
        }();
        const Beamformers W = oracle::random_complex(gen, T, K, 0.3 + u(gen));
        Eigen::VectorXd q;
        if (trial % 2 == 1)
            q = Eigen::VectorXd::NullaryExpr(T, [&](Eigen::Index) { return 0.5 * u(gen); });
        const double gamma_m = trial % 3 == 0 ? 1.0 : 1.0 + 9.0 * u(gen);
        const double noise = 0.2 + u(gen);
        for (int k = 0; k < K; ++k)
        {
            const MmseReceiver r = mmse_receiver(H[k], W, k, q, noise, gamma_m);
            const double sinr = compute_sinr(H[k], W, k, q, noise);
            worst = std::max(worst, std::abs(std::log2(1.0 / r.e) - std::log2(1.0 + sinr / gamma_m)));
        }
    }
    return {worst < 1e-9, fmt("10000 instances, max |log2(1/e) - log2(1 + SINR/Gamma)| = %.3g (limit 1e-9)", worst)};
}

QcqpProblem qcqp_instance(std::mt19937_64 &gen, bool with_backhaul)
{
    const int T = 4, K = 2;
    std::uniform_real_distribution<double> u(0.05, 1.0);
    QcqpProblem p;
    for (int k = 0; k < K; ++k)
    {
        const Eigen::MatrixXcd G = oracle::random_complex(gen, T, 2);
        p.forms.push_back({G * G.adjoint() * u(gen), oracle::random_complex(gen, T, 1).col(0) * (1.0 + 2.0 * u(gen))});
    }
    for (int i = 0; i < T; ++i)
    {
        QuadraticConstraint c;
        c.first = i;
        c.weights = Eigen::MatrixXd::Ones(1, K);
        c.bound = u(gen);
        c.tag = i;
        p.constraints.push_back(c);
    }
    if (with_backhaul)
        for (int l = 0; l < 2; ++l)
        {
            QuadraticConstraint c;
            c.first = 2 * l;
            c.weights = Eigen::MatrixXd(2, K);
            for (int k = 0; k < K; ++k)
                c.weights(0, k) = c.weights(1, k) = 3.0 * u(gen);
            c.bound = u(gen);
            c.kind = ConstraintKind::backhaul;
            c.tag = l;
            p.constraints.push_back(c);
        }
    return p;
}

Outcome criterion_3()
{
    std::mt19937_64 gen(303);
    double worst = 0.0;
    int unconverged = 0;
    for (int trial = 0; trial < 50; ++trial)
    {
        const QcqpProblem p = qcqp_instance(gen, trial % 5 != 0);
        const QcqpSolution s = solve_qcqp(p);
        const oracle::BarrierResult ref = oracle::barrier_solve(p);
        unconverged += s.converged ? 0 : 1;
        worst = std::max(worst, std::abs(s.objective - ref.objective));
        worst = std::max(worst, s.max_violation);
    }
    return {worst <= 1e-3 && unconverged == 0,
            fmt("50 instances, max |dual - interior point| objective gap %.3g (limit 1e-3), %g unconverged", worst,
                unconverged)};
}

struct FeasibilityTally
{
    double power = 0.0;
    double backhaul = 0.0;
    int solutions = 0;

    void add(const Feasibility &f)
    {
        power = std::max(power, f.power);
        backhaul = std::max(backhaul, f.backhaul);
        ++solutions;
    }
};

Outcome criterion_4(const std::vector<const ExperimentResult *> &experiments)
{
    FeasibilityTally tally;
    std::mt19937_64 gen(404);
    std::uniform_real_distribution<double> bits(0.3, 8.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int M = trial % 2 == 0 ? 1 : 2;
        const SlotProblem p = random_problem(gen, 3, M, 6, bits(gen), 2.0);
        for (StrategyKind kind : {StrategyKind::data_sharing, StrategyKind::compression_adaptive,
                                  StrategyKind::compression_fixed, StrategyKind::hybrid, StrategyKind::full_coop,
                                  StrategyKind::no_coop})
        {
            if (kind == StrategyKind::hybrid && M != 1)
                continue;
            SlotProblem own = p;
            if (ignores_backhaul(kind))
                own.backhaul_bps.setConstant(std::numeric_limits<double>::infinity());
            tally.add(check_feasibility(own, run_strategy(kind, own)));
        }
    }
    for (const ExperimentResult *e : experiments)
        for (const auto &run : e->runs)
            for (const auto &log : run.slots)
                tally.add(log.feasibility);
    const double worst = std::max(tally.power, tally.backhaul);
    return {worst <= 1e-6, fmt("%g solutions, max relative violation power %.3g, backhaul %.3g (limit 1e-6)",
                               tally.solutions, tally.power, tally.backhaul)};
}

Outcome criterion_5(const fs::path &configs)
{
    ExperimentSpec spec = parse_experiment_spec(read_text_file((configs / "desk-scale.conf").string()));
    NetworkConfig cfg = spec.scenario;
    cfg.backhaul_macro_bps = cfg.backhaul_pico_bps = 1e12;
    double worst = 0.0;
    int slots = 0;
    for (std::uint64_t seed : {1, 2})
    {
        cfg.rng_seed = seed;
        const Topology topo = build_topology(cfg);
        for (int slot = 0; slot < 3; ++slot)
        {
            const SlotProblem p = make_slot_problem(draw_channel(topo, cfg, slot), topo, cfg,
                                                    Eigen::VectorXd::Ones(cfg.num_users()));
            const double fc = optimize_full_cooperation(p).sum_rate_bps();
            const double comp = optimize_compression_adaptive(p).sum_rate_bps();
            worst = std::max(worst, std::abs(comp - fc) / fc);
            ++slots;
        }
    }

    // One BS whose per-antenna fronthaul is below the quantizer floor.
    std::mt19937_64 gen(505);
    const double gamma_q = db_to_linear(cfg.gamma_q_db);
    SlotProblem p = random_problem(gen, 3, 2, 4, 8.0, gamma_q);
    p.backhaul_bps(1) = 2.0 * 0.9 * std::log2(1.0 + gamma_q);
    const SlotResult fixed = optimize_compression_fixed(p);
    const FixedQuantization fq = fixed_quantization(p);
    double floor_power = 0.0;
    for (int i : {2, 3})
        floor_power = std::max(floor_power, fixed.w.row(i).squaredNorm());
    const bool floor_ok = fq.unusable == std::vector<int>{2, 3} && floor_power == 0.0 && fq.budget(2) == 0.0 &&
                          fq.budget(3) == 0.0;
    return {worst <= 1e-3 && floor_ok,
            fmt("C = 1e12: max |adaptive - full coop| / full coop = %.3g over %g slots (limit 1e-3); "
                "fixed below floor: %g unusable antennas, transmit power %g",
                worst, slots, static_cast<double>(fq.unusable.size()), floor_power)};
}

Outcome criterion_6()
{
    std::mt19937_64 gen(606);
    std::uniform_real_distribution<double> bits(1.0, 6.0);
    int instances = 0, attempts = 0;
    long long both = 0, pairs = 0;
    while (instances < 50 && attempts < 200)
    {
        ++attempts;
        const SlotProblem p = random_problem(gen, 3, 1, 6, bits(gen), 2.0);
        const HybridOutcome h = optimize_hybrid(p);
        if (!h.result.converged)
            continue;
        ++instances;
        for (int l = 0; l < 3; ++l)
            for (int k = 0; k < 6; ++k)
            {
                const double eps = 1e-4 * p.power(l);
                if (std::norm(h.result.w_data(l, k)) > eps && std::norm(h.result.w_compressed(l, k)) > eps)
                    ++both;
                ++pairs;
            }
    }
    const double share = pairs > 0 ? static_cast<double>(both) / static_cast<double>(pairs) : 1.0;
    return {instances == 50 && share <= 0.05,
            fmt("%g converged instances (%g attempts), %g of %g pairs carry both parts", instances, attempts,
                static_cast<double>(both), static_cast<double>(pairs)) +
                fmt(", share %.4f (limit 0.05)", share)};
}

double p50(const ExperimentResult &e, StrategyKind kind, const SweepPoint &point)
{
    const StrategyRun *r = e.find(kind, point);
    if (r == nullptr)
        throw std::runtime_error(std::string("missing run ") + strategy_name(kind) + " at " + point.label());
    return r->cdf.p50;
}

double sum_rate(const ExperimentResult &e, StrategyKind kind, const SweepPoint &point)
{
    const StrategyRun *r = e.find(kind, point);
    if (r == nullptr)
        throw std::runtime_error(std::string("missing run ") + strategy_name(kind) + " at " + point.label());
    return r->sum_rate_bps;
}

Outcome criterion_7(const ExperimentResult &desk)
{
    const SweepPoint lo = desk.spec.backhaul_sweep.front(), hi = desk.spec.backhaul_sweep.back();
    const double ds_lo = p50(desk, StrategyKind::data_sharing, lo);
    const double comp_lo = p50(desk, StrategyKind::compression_adaptive, lo);
    const double ds_hi = p50(desk, StrategyKind::data_sharing, hi);
    const double comp_hi = p50(desk, StrategyKind::compression_adaptive, hi);
    const double fc = p50(desk, StrategyKind::full_coop, hi);
    const bool pass = ds_lo > comp_lo && comp_hi > ds_hi && comp_hi >= 0.85 * fc;
    return {pass, "p50 Mbps " + lo.label() + fmt(": data %.3f vs compression %.3f; ", ds_lo / 1e6, comp_lo / 1e6) +
                      hi.label() +
                      fmt(": data %.3f vs compression %.3f, full coop %.3f (compression >= 0.85 x full coop)",
                          ds_hi / 1e6, comp_hi / 1e6, fc / 1e6)};
}

Outcome criterion_8(const ExperimentResult &desk)
{
    bool pass = true;
    std::string detail = "sum Mbps hybrid / best pure:";
    for (const auto &pt : desk.spec.backhaul_sweep)
    {
        const double h = sum_rate(desk, StrategyKind::hybrid, pt);
        const double best = std::max(sum_rate(desk, StrategyKind::data_sharing, pt),
                                     sum_rate(desk, StrategyKind::compression_adaptive, pt));
        pass = pass && h >= 0.95 * best;
        detail += " " + pt.label() + fmt(" %.2f/%.2f", h / 1e6, best / 1e6);
    }
    return {pass, detail + " (limit hybrid >= 0.95 x best)"};
}

Outcome criterion_9(const ExperimentResult &full, const ExperimentResult &clustered, const SweepPoint &mid)
{
    auto loss = [&](StrategyKind kind) {
        const double a = p50(full, kind, mid);
        return (a - p50(clustered, kind, mid)) / a;
    };
    const double ds = loss(StrategyKind::data_sharing);
    const double comp = loss(StrategyKind::compression_adaptive);
    return {comp > ds, mid.label() +
                           fmt(" p50 loss full -> %g-BS clustered CSI: compression %.2f%%, data %.2f%%",
                               clustered.spec.scenario.csi_cluster_size, 100.0 * comp, 100.0 * ds)};
}

std::string slurp(const fs::path &p)
{
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

Outcome criterion_10(ExperimentSpec spec, const fs::path &out)
{
    spec.seeds = {spec.seeds.front()};
    spec.num_slots = 3;
    const fs::path a = out / "determinism-a", b = out / "determinism-b";
    fs::remove_all(a);
    fs::remove_all(b);
    write_report(run_experiment(spec), a.string());
    write_report(run_experiment(spec), b.string());
    int files = 0, differ = 0;
    for (const auto &entry : fs::recursive_directory_iterator(a))
    {
        if (!entry.is_regular_file())
            continue;
        ++files;
        const fs::path other = b / fs::relative(entry.path(), a);
        if (!fs::exists(other) || slurp(entry.path()) != slurp(other))
            ++differ;
    }
    int files_b = 0;
    for (const auto &entry : fs::recursive_directory_iterator(b))
        files_b += entry.is_regular_file() ? 1 : 0;
    return {files > 0 && differ == 0 && files == files_b,
            fmt("%g report files, %g differ between two runs", files, differ)};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Acceptance criteria 1-10"};
    std::vector<int> only;
    std::string configs = CRAN_CONFIG_DIR;
    std::string out = "acceptance-out";
    int workers = 0;
    app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 10));
    app.add_option("--configs", configs, "Directory holding desk-scale.conf")->check(CLI::ExistingDirectory);
    app.add_option("--out", out, "Directory for the experiment reports");
    app.add_option("--workers", workers, "Worker threads, 0 for one per hardware thread")
        ->check(CLI::NonNegativeNumber);
    CLI11_PARSE(app, argc, argv);
    const std::set<int> selected(only.begin(), only.end());
    auto wanted = [&](int c) { return selected.empty() || selected.count(c) > 0; };

    int failures = 0;
    auto report = [&](int c, const Outcome &o, double seconds) {
        std::printf("criterion %2d: %s  %s  [%.0f s]\n", c, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    };
    auto timed = [&](int c, const auto &fn) {
        if (!wanted(c))
            return;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = fn();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("error: ") + e.what()};
        }
        report(c, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    };

    const fs::path config_dir(configs), out_dir(out);
    fs::create_directories(out_dir);

    ExperimentSpec desk_spec = parse_experiment_spec(read_text_file((config_dir / "desk-scale.conf").string()));
    desk_spec.workers = workers;
    const SweepPoint mid = desk_spec.backhaul_sweep[(desk_spec.backhaul_sweep.size() - 1) / 2];

    std::optional<ExperimentResult> desk, clustered;
    std::string desk_error;
    if (wanted(4) || wanted(7) || wanted(8) || wanted(9))
    {
        try
        {
            const auto t0 = std::chrono::steady_clock::now();
            desk = run_experiment(desk_spec);
            write_report(*desk, (out_dir / "desk-scale").string());
            std::printf("desk-scale experiment: %zu runs in %.0f s\n", desk->runs.size(),
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        catch (const std::exception &e)
        {
            desk_error = e.what();
        }
    }
    if (wanted(4) || wanted(9))
    {
        try
        {
            ExperimentSpec spec =
                parse_experiment_spec(read_text_file((config_dir / "desk-scale-clustered.conf").string()));
            spec.strategies = {StrategyKind::data_sharing, StrategyKind::compression_adaptive};
            spec.backhaul_sweep = {mid};
            spec.seeds = desk_spec.seeds;
            spec.num_slots = desk_spec.num_slots;
            spec.workers = workers;
            const auto t0 = std::chrono::steady_clock::now();
            clustered = run_experiment(spec);
            write_report(*clustered, (out_dir / "desk-scale-clustered").string());
            std::printf("clustered-CSI experiment: %zu runs in %.0f s\n", clustered->runs.size(),
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        catch (const std::exception &e)
        {
            desk_error += std::string(desk_error.empty() ? "" : "; ") + e.what();
        }
    }
    auto need = [&](bool ok) {
        if (!ok)
            throw std::runtime_error(desk_error.empty() ? "experiment not run" : desk_error);
    };

    timed(1, criterion_1);
    timed(2, criterion_2);
    timed(3, criterion_3);
    timed(4, [&] {
        need(desk && clustered);
        return criterion_4({&*desk, &*clustered});
    });
    timed(5, [&] { return criterion_5(config_dir); });
    timed(6, criterion_6);
    timed(7, [&] {
        need(desk.has_value());
        return criterion_7(*desk);
    });
    timed(8, [&] {
        need(desk.has_value());
        return criterion_8(*desk);
    });
    timed(9, [&] {
        need(desk && clustered);
        return criterion_9(*desk, *clustered, mid);
    });
    timed(10, [&] {
        return criterion_10(desk_spec, out_dir);
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
