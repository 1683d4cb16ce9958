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
#include "cran/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace
{

enum ExitCode
{
    kOk = 0,
    kBadInput = 1,
    kSolverFailure = 2,
    kRefused = 3
};

struct RunArgs
{
    std::string config;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> strategies;
    int slots = 0;
    std::string out;
    int workers = -1;
    bool quiet = false;
};

int run_command(const RunArgs &args)
{
    cran::ExperimentSpec spec;
    try
    {
        spec = cran::parse_experiment_spec(cran::read_text_file(args.config));
        if (!args.seeds.empty())
            spec.seeds = args.seeds;
        if (!args.strategies.empty())
        {
            spec.strategies.clear();
            for (const auto &name : args.strategies)
                spec.strategies.push_back(cran::parse_strategy(name));
        }
        if (args.slots > 0)
            spec.num_slots = args.slots;
        if (!args.out.empty())
            spec.output_dir = args.out;
        if (args.workers >= 0)
            spec.workers = args.workers;
        spec.validate();
    }
    catch (const std::exception &e)
    {
        std::cerr << "cran-bench: " << args.config << ": " << e.what() << "\n";
        return kBadInput;
    }

    cran::ExperimentResult result;
    try
    {
        cran::ProgressFn progress;
        if (!args.quiet)
            progress = [](const std::string &msg) { std::cerr << "  " << msg << "\n"; };
        result = cran::run_experiment(spec, progress);
    }
    catch (const cran::ExperimentFailure &e)
    {
        std::cerr << "cran-bench: " << e.what() << "\n";
        return kSolverFailure;
    }

    try
    {
        cran::write_report(result, spec.output_dir);
    }
    catch (const std::exception &e)
    {
        std::cerr << "cran-bench: " << e.what() << "\n";
        return kBadInput;
    }

    const cran::ReportSummary summary = cran::summarize(result);
    std::printf("%-22s %-24s %14s %14s %12s\n", "strategy", "backhaul", "sum_Mbps", "p50_Mbps", "utilization");
    for (const auto &r : summary.runs)
    {
        const std::string point = r.backhaul_ignored ? "unlimited" : r.directory.substr(r.directory.find('/') + 1);
        std::printf("%-22s %-24s %14.3f %14.3f %12.3f\n", r.strategy.c_str(), point.c_str(), r.sum_rate_bps / 1e6,
                    r.p50_bps / 1e6, r.backhaul_utilization);
    }
    std::printf("report written to %s\n", spec.output_dir.c_str());
    return kOk;
}

int compare_command(const std::vector<std::string> &dirs)
{
    std::vector<cran::ReportSummary> reports;
    try
    {
        for (const auto &d : dirs)
            reports.push_back(cran::load_report(d));
    }
    catch (const std::exception &e)
    {
        std::cerr << "cran-bench: " << e.what() << "\n";
        return kBadInput;
    }
    try
    {
        std::cout << cran::format_comparison(cran::compare_strategies(std::move(reports)));
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "cran-bench: refusing to compare: " << e.what() << "\n";
        return kRefused;
    }
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Compare downlink C-RAN transmission strategies under finite backhaul"};
    app.require_subcommand(1);

    RunArgs run;
    CLI::App *run_cmd = app.add_subcommand("run", "Run an experiment and write its report");
    run_cmd->add_option("--config", run.config, "Experiment file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--seed", run.seeds, "Seeds (overrides the file)");
    run_cmd->add_option("--strategy", run.strategies,
                        "data-sharing, compression-adaptive, compression-fixed, hybrid, full-coop, no-coop");
    run_cmd->add_option("--slots", run.slots, "Scheduling slots per seed (overrides the file)")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", run.out, "Report directory (overrides the file)");
    run_cmd->add_option("--workers", run.workers, "Worker threads, 0 for one per hardware thread")
        ->check(CLI::NonNegativeNumber);
    run_cmd->add_flag("--quiet", run.quiet, "No progress on stderr");

    std::vector<std::string> dirs;
    CLI::App *compare_cmd = app.add_subcommand("compare", "Compare the strategies of one or more reports");
    compare_cmd->add_option("dirs", dirs, "Report directories")->required()->check(CLI::ExistingDirectory);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? kOk : kBadInput;
    }

    if (run_cmd->parsed())
        return run_command(run);
    return compare_command(dirs);
}
