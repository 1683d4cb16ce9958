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

#include "cran/experiment.hpp"

#include "cran/channel.hpp"
#include "cran/topology.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace cran
{

namespace
{

constexpr double kFeasibilityTolerance = 1e-6;

std::string mbps_text(double bps)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", bps / 1e6);
    return buf;
}

std::vector<std::uint64_t> parse_seeds(const std::string &value, int line)
{
    std::vector<std::uint64_t> seeds;
    for (const auto &item : split_list(value))
    {
        const auto dash = item.find('-', 1);
        if (dash == std::string::npos)
        {
            const long long v = parse_integer(item, "seeds", line);
            if (v < 0)
                throw ConfigError("seeds", line, "seeds must be nonnegative");
            seeds.push_back(static_cast<std::uint64_t>(v));
            continue;
        }
        const long long lo = parse_integer(item.substr(0, dash), "seeds", line);
        const long long hi = parse_integer(item.substr(dash + 1), "seeds", line);
        if (lo < 0 || hi < lo)
            throw ConfigError("seeds", line, "bad seed range '" + item + "'");
        for (long long s = lo; s <= hi; ++s)
            seeds.push_back(static_cast<std::uint64_t>(s));
    }
    return seeds;
}

std::vector<SweepPoint> parse_sweep(const std::string &value, int line)
{
    std::vector<SweepPoint> sweep;
    for (const auto &item : split_list(value))
    {
        const auto parts = split_list(item, '/');
        if (parts.size() != 2)
            throw ConfigError("backhaul_sweep", line, "expected 'macro/pico', got '" + item + "'");
        sweep.push_back(
            {parse_number(parts[0], "backhaul_sweep", line), parse_number(parts[1], "backhaul_sweep", line)});
    }
    return sweep;
}

std::string describe(StrategyKind kind, const SweepPoint &point, std::uint64_t seed)
{
    return std::string(strategy_name(kind)) + " at " + point.label() + ", seed " + std::to_string(seed);
}

void require_feasible(const SlotResult &r, const Feasibility &f, const std::string &where, int slot)
{
    const std::string at = where + ", slot " + std::to_string(slot) + ": ";
    if (!r.rate_bps.allFinite() || !std::isfinite(r.weighted_sum_rate_bps))
        throw ExperimentFailure(at + "non-finite rate");
    if (!r.backhaul_data_bps.allFinite() || !r.backhaul_compression_bps.allFinite())
        throw ExperimentFailure(at + "non-finite backhaul usage");
    auto check = [&](double v, const char *what) {
        if (!(v <= kFeasibilityTolerance))
        {
            std::ostringstream os;
            os << at << what << " constraint violated by " << v << " (relative)";
            throw ExperimentFailure(os.str());
        }
    };
    check(f.power, "power");
    check(f.backhaul, "backhaul");
    check(f.fronthaul, "fronthaul");
}

struct SeedOutput
{
    std::vector<SlotLog> slots;
    Eigen::VectorXd mean_bps;
};

SeedOutput run_chain(const ExperimentSpec &spec, StrategyKind kind, const SweepPoint &point, std::uint64_t seed)
{
    NetworkConfig cfg = spec.scenario;
    cfg.rng_seed = seed;
    cfg.backhaul_macro_bps = point.macro_bps;
    cfg.backhaul_pico_bps = point.pico_bps;
    const Topology topo = build_topology(cfg);
    const std::string where = describe(kind, point, seed);

    SeedOutput out;
    PFState pf = PFState::initial(cfg.num_users(), spec.pf_window);
    out.mean_bps = Eigen::VectorXd::Zero(cfg.num_users());
    for (int slot = 0; slot < spec.num_slots; ++slot)
    {
        const ChannelRealization ch = draw_channel(topo, cfg, static_cast<std::uint64_t>(slot));
        const SlotProblem problem = make_slot_problem(ch, topo, cfg, pf.alpha);
        SlotLog log;
        log.seed = seed;
        log.slot = slot;
        try
        {
            log.result = run_strategy(kind, problem, spec.options);
        }
        catch (const std::exception &e)
        {
            throw ExperimentFailure(where + ", slot " + std::to_string(slot) + ": solver failure: " + e.what());
        }
        log.feasibility = check_feasibility(problem, log.result);
        require_feasible(log.result, log.feasibility, where, slot);
        pf = update_pf(pf, log.result.rate_bps);
        out.mean_bps += log.result.rate_bps;
        log.result.w.resize(0, 0);
        log.result.w_data.resize(0, 0);
        log.result.w_compressed.resize(0, 0);
        log.result.wsr_traces.clear();
        out.slots.push_back(std::move(log));
    }
    out.mean_bps /= static_cast<double>(spec.num_slots);
    return out;
}

} // namespace

bool SweepPoint::unlimited() const
{
    return std::isinf(macro_bps) && std::isinf(pico_bps);
}

std::string SweepPoint::label() const
{
    if (unlimited())
        return "unlimited";
    return "macro" + mbps_text(macro_bps) + "M-pico" + mbps_text(pico_bps) + "M";
}

double SweepPoint::total_bps(const NetworkConfig &cfg) const
{
    return cfg.num_cells * (cfg.macro_per_cell * macro_bps + cfg.picos_per_cell * pico_bps);
}

void ExperimentSpec::validate() const
{
    scenario.validate();
    if (strategies.empty())
        throw ConfigError("strategies", 0, "at least one strategy is required");
    if (num_slots < 1)
        throw ConfigError("slots", 0, "must be >= 1");
    if (seeds.empty())
        throw ConfigError("seeds", 0, "at least one seed is required");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
        throw ConfigError("seeds", 0, "seeds must be distinct");
    if (!(pf_window >= 1.0) || !std::isfinite(pf_window))
        throw ConfigError("pf_window", 0, "must be a finite number of slots >= 1");
    if (workers < 0)
        throw ConfigError("workers", 0, "must be >= 0");
    if (std::set<StrategyKind>(strategies.begin(), strategies.end()).size() != strategies.size())
        throw ConfigError("strategies", 0, "strategies must be distinct");
    for (const auto &p : backhaul_sweep)
        if (std::isnan(p.macro_bps) || std::isnan(p.pico_bps) || p.macro_bps < 0.0 || p.pico_bps < 0.0)
            throw ConfigError("backhaul_sweep", 0, "capacities must be >= 0");
    const bool single = scenario.antennas_macro == 1 && scenario.antennas_pico == 1;
    if (!single && std::find(strategies.begin(), strategies.end(), StrategyKind::hybrid) != strategies.end())
        throw ConfigError("strategies", 0, "hybrid requires single-antenna BSs");
}

std::vector<SweepPoint> ExperimentSpec::points_for(StrategyKind kind) const
{
    if (ignores_backhaul(kind))
        return {{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()}};
    if (backhaul_sweep.empty())
        return {{scenario.backhaul_macro_bps, scenario.backhaul_pico_bps}};
    return backhaul_sweep;
}

ExperimentSpec parse_experiment_spec(const std::string &text)
{
    ExperimentSpec spec;
    for (const auto &cl : tokenize_config(text))
    {
        if (apply_network_field(spec.scenario, cl.key, cl.value, cl.line))
            continue;
        if (cl.key == "strategies")
        {
            spec.strategies.clear();
            for (const auto &name : split_list(cl.value))
            {
                try
                {
                    spec.strategies.push_back(parse_strategy(name));
                }
                catch (const std::invalid_argument &e)
                {
                    throw ConfigError(cl.key, cl.line, e.what());
                }
            }
        }
        else if (cl.key == "backhaul_sweep")
            spec.backhaul_sweep = parse_sweep(cl.value, cl.line);
        else if (cl.key == "slots")
            spec.num_slots = static_cast<int>(parse_integer(cl.value, cl.key, cl.line));
        else if (cl.key == "seeds")
            spec.seeds = parse_seeds(cl.value, cl.line);
        else if (cl.key == "pf_window")
            spec.pf_window = parse_number(cl.value, cl.key, cl.line);
        else if (cl.key == "output_dir")
            spec.output_dir = cl.value;
        else if (cl.key == "workers")
            spec.workers = static_cast<int>(parse_integer(cl.value, cl.key, cl.line));
        else
            throw ConfigError(cl.key, cl.line, "unknown field");
    }
    spec.validate();
    return spec;
}

const StrategyRun *ExperimentResult::find(StrategyKind kind, const SweepPoint &point) const
{
    for (const auto &r : runs)
        if (r.strategy == kind &&
            (ignores_backhaul(kind) || (r.point.macro_bps == point.macro_bps && r.point.pico_bps == point.pico_bps)))
            return &r;
    return nullptr;
}

std::uint64_t fnv1a64(const std::string &bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string scenario_fingerprint(const ExperimentSpec &spec)
{
    NetworkConfig cfg = spec.scenario;
    cfg.rng_seed = 0;
    std::ostringstream os;
    os << cfg.to_string() << "slots = " << spec.num_slots << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", spec.pf_window);
    os << "pf_window = " << buf << "\nbackhaul_sweep =";
    for (const auto &p : spec.backhaul_sweep)
    {
        std::snprintf(buf, sizeof buf, " %.17g/%.17g", p.macro_bps, p.pico_bps);
        os << buf;
    }
    os << "\n";
    return os.str();
}

ExperimentResult run_experiment(const ExperimentSpec &spec, const ProgressFn &progress)
{
    spec.validate();
    ExperimentResult result;
    result.spec = spec;
    result.scenario_hash = fnv1a64(scenario_fingerprint(spec));
    for (StrategyKind kind : spec.strategies)
        for (const auto &point : spec.points_for(kind))
        {
            StrategyRun run;
            run.strategy = kind;
            run.point = point;
            result.runs.push_back(std::move(run));
        }

    const std::size_t S = spec.seeds.size();
    const std::size_t jobs = result.runs.size() * S;
    std::vector<SeedOutput> outputs(jobs);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::atomic<std::size_t> done{0};
    std::mutex mutex;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;)
        {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs || abort.load())
                return;
            const auto &run = result.runs[job / S];
            const std::uint64_t seed = spec.seeds[job % S];
            try
            {
                outputs[job] = run_chain(spec, run.strategy, run.point, seed);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(mutex);
                if (!failure)
                    failure = std::current_exception();
                abort = true;
                return;
            }
            if (progress)
            {
                std::lock_guard<std::mutex> lock(mutex);
                progress(describe(run.strategy, run.point, seed) + " done (" + std::to_string(++done) + "/" +
                         std::to_string(jobs) + ")");
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t count =
        std::min<std::size_t>(jobs, spec.workers > 0 ? static_cast<std::size_t>(spec.workers) : hw);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < count; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);

    for (std::size_t r = 0; r < result.runs.size(); ++r)
    {
        auto &run = result.runs[r];
        std::vector<double> pooled;
        double sum = 0.0;
        for (std::size_t s = 0; s < S; ++s)
        {
            auto &o = outputs[r * S + s];
            for (auto &log : o.slots)
            {
                sum += log.result.sum_rate_bps();
                run.slots.push_back(std::move(log));
            }
            pooled.insert(pooled.end(), o.mean_bps.data(), o.mean_bps.data() + o.mean_bps.size());
            run.user_mean_bps.push_back(std::move(o.mean_bps));
        }
        run.sum_rate_bps = sum / static_cast<double>(run.slots.size());
        run.cdf = rate_cdf(Eigen::Map<const Eigen::VectorXd>(pooled.data(), static_cast<Eigen::Index>(pooled.size())));
    }
    return result;
}

} // namespace cran
