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

#include "cran/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cran
{

namespace
{

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex64(const std::string &s)
{
    std::uint64_t v = 0;
    const char *begin = s.data() + (s.rfind("0x", 0) == 0 ? 2 : 0);
    const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v, 16);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("malformed scenario hash '" + s + "'");
    return v;
}

ordered_json number_or_null(double v)
{
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

double number_or_inf(const ordered_json &j)
{
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

ordered_json vector_json(const Eigen::VectorXd &v)
{
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(number_or_null(v(i)));
    return a;
}

std::string run_directory(const StrategyRun &run)
{
    return std::string(strategy_name(run.strategy)) + "/" + run.point.label();
}

RunSummary summarize_run(const StrategyRun &run, const NetworkConfig &cfg)
{
    RunSummary s;
    s.strategy = strategy_name(run.strategy);
    s.backhaul_ignored = ignores_backhaul(run.strategy);
    s.macro_bps = run.point.macro_bps;
    s.pico_bps = run.point.pico_bps;
    s.total_backhaul_bps = run.point.total_bps(cfg);
    s.directory = run_directory(run);
    s.sum_rate_bps = run.sum_rate_bps;
    s.mean_user_rate_bps = run.cdf.mean;
    s.p10_bps = run.cdf.p10;
    s.p50_bps = run.cdf.p50;
    s.p90_bps = run.cdf.p90;
    s.slots = static_cast<int>(run.slots.size());
    std::set<std::string> warnings;
    double cluster_sum = 0.0;
    for (const auto &log : run.slots)
    {
        const SlotResult &r = log.result;
        s.backhaul_data_bps += r.backhaul_data_bps.sum();
        s.backhaul_compression_bps += r.backhaul_compression_bps.sum();
        const Eigen::ArrayXi per_user = r.cluster.cast<int>().colwise().sum().transpose();
        const int served = static_cast<int>((per_user > 0).count());
        if (served > 0)
            cluster_sum += static_cast<double>(per_user.sum()) / served;
        s.slots_converged += r.converged ? 1 : 0;
        s.outer_iterations += r.outer_iterations;
        s.inner_iterations += r.inner_iterations;
        s.qcqp_solves += r.solver.qcqp_solves;
        s.qcqp_unconverged += r.solver.qcqp_unconverged;
        s.repairs += r.repairs;
        s.mode_violations += r.mode_violations;
        s.max_power_violation = std::max(s.max_power_violation, log.feasibility.power);
        s.max_backhaul_violation = std::max(s.max_backhaul_violation, log.feasibility.backhaul);
        warnings.insert(r.warnings.begin(), r.warnings.end());
    }
    if (s.slots > 0)
    {
        s.backhaul_data_bps /= s.slots;
        s.backhaul_compression_bps /= s.slots;
        s.mean_cluster_size = cluster_sum / s.slots;
    }
    if (std::isfinite(s.total_backhaul_bps) && s.total_backhaul_bps > 0.0)
        s.backhaul_utilization = (s.backhaul_data_bps + s.backhaul_compression_bps) / s.total_backhaul_bps;
    s.warnings.assign(warnings.begin(), warnings.end());
    return s;
}

ordered_json run_json(const RunSummary &s)
{
    ordered_json j;
    j["strategy"] = s.strategy;
    j["backhaul_ignored"] = s.backhaul_ignored;
    j["backhaul"] = {{"macro_bps", number_or_null(s.macro_bps)},
                     {"pico_bps", number_or_null(s.pico_bps)},
                     {"total_bps", number_or_null(s.total_backhaul_bps)}};
    j["directory"] = s.directory;
    j["sum_rate_bps"] = s.sum_rate_bps;
    j["user_rate_bps"] = {
        {"mean", s.mean_user_rate_bps}, {"p10", s.p10_bps}, {"p50", s.p50_bps}, {"p90", s.p90_bps}};
    j["backhaul_usage"] = {{"data_bps", s.backhaul_data_bps},
                           {"compression_bps", s.backhaul_compression_bps},
                           {"utilization", s.backhaul_utilization}};
    j["mean_cluster_size"] = s.mean_cluster_size;
    j["solver"] = {{"slots", s.slots},
                   {"slots_converged", s.slots_converged},
                   {"outer_iterations", s.outer_iterations},
                   {"inner_iterations", s.inner_iterations},
                   {"qcqp_solves", s.qcqp_solves},
                   {"qcqp_unconverged", s.qcqp_unconverged},
                   {"repairs", s.repairs},
                   {"mode_violations", s.mode_violations},
                   {"max_power_violation", s.max_power_violation},
                   {"max_backhaul_violation", s.max_backhaul_violation}};
    j["warnings"] = s.warnings;
    return j;
}

RunSummary run_from_json(const ordered_json &j)
{
    RunSummary s;
    s.strategy = j.at("strategy").get<std::string>();
    s.backhaul_ignored = j.at("backhaul_ignored").get<bool>();
    s.macro_bps = number_or_inf(j.at("backhaul").at("macro_bps"));
    s.pico_bps = number_or_inf(j.at("backhaul").at("pico_bps"));
    s.total_backhaul_bps = number_or_inf(j.at("backhaul").at("total_bps"));
    s.directory = j.at("directory").get<std::string>();
    s.sum_rate_bps = j.at("sum_rate_bps").get<double>();
    const auto &u = j.at("user_rate_bps");
    s.mean_user_rate_bps = u.at("mean").get<double>();
    s.p10_bps = u.at("p10").get<double>();
    s.p50_bps = u.at("p50").get<double>();
    s.p90_bps = u.at("p90").get<double>();
    const auto &b = j.at("backhaul_usage");
    s.backhaul_data_bps = b.at("data_bps").get<double>();
    s.backhaul_compression_bps = b.at("compression_bps").get<double>();
    s.backhaul_utilization = b.at("utilization").get<double>();
    s.mean_cluster_size = j.at("mean_cluster_size").get<double>();
    const auto &v = j.at("solver");
    s.slots = v.at("slots").get<int>();
    s.slots_converged = v.at("slots_converged").get<int>();
    s.outer_iterations = v.at("outer_iterations").get<long long>();
    s.inner_iterations = v.at("inner_iterations").get<long long>();
    s.qcqp_solves = v.at("qcqp_solves").get<long long>();
    s.qcqp_unconverged = v.at("qcqp_unconverged").get<long long>();
    s.repairs = v.at("repairs").get<int>();
    s.mode_violations = v.at("mode_violations").get<int>();
    s.max_power_violation = v.at("max_power_violation").get<double>();
    s.max_backhaul_violation = v.at("max_backhaul_violation").get<double>();
    s.warnings = j.at("warnings").get<std::vector<std::string>>();
    return s;
}

ordered_json header_json(const ReportSummary &summary)
{
    ordered_json j;
    j["format"] = "cran-bench-report";
    j["version"] = 1;
    j["scenario_hash"] = hex64(summary.scenario_hash);
    j["seeds"] = summary.seeds;
    j["slots"] = summary.num_slots;
    return j;
}

std::string slot_line(const SlotLog &log)
{
    const SlotResult &r = log.result;
    ordered_json j;
    j["seed"] = log.seed;
    j["slot"] = log.slot;
    j["sum_rate_bps"] = r.sum_rate_bps();
    j["weighted_sum_rate_bps"] = r.weighted_sum_rate_bps;
    j["rates_bps"] = vector_json(r.rate_bps);
    j["backhaul_data_bps"] = vector_json(r.backhaul_data_bps);
    j["backhaul_compression_bps"] = vector_json(r.backhaul_compression_bps);
    ordered_json modes = ordered_json::array();
    for (Eigen::Index l = 0; l < r.modes.rows(); ++l)
    {
        std::string row;
        for (Eigen::Index k = 0; k < r.modes.cols(); ++k)
            row.push_back(static_cast<char>(r.modes(l, k)));
        modes.push_back(row);
    }
    j["modes"] = modes;
    j["outer_iterations"] = r.outer_iterations;
    j["inner_iterations"] = r.inner_iterations;
    j["converged"] = r.converged;
    j["repairs"] = r.repairs;
    j["mode_violations"] = r.mode_violations;
    j["qcqp_solves"] = r.solver.qcqp_solves;
    j["qcqp_unconverged"] = r.solver.qcqp_unconverged;
    j["power_violation"] = log.feasibility.power;
    j["backhaul_violation"] = log.feasibility.backhaul;
    j["warnings"] = r.warnings;
    return j.dump();
}

void write_file(const fs::path &path, const std::string &bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << bytes;
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

} // namespace

std::string format_number(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

ReportSummary summarize(const ExperimentResult &result)
{
    ReportSummary s;
    s.scenario_hash = result.scenario_hash;
    s.seeds = result.spec.seeds;
    s.num_slots = result.spec.num_slots;
    for (const auto &run : result.runs)
        s.runs.push_back(summarize_run(run, result.spec.scenario));
    return s;
}

void write_report(const ExperimentResult &result, const std::string &dir)
{
    const ReportSummary summary = summarize(result);
    const fs::path root(dir);
    fs::create_directories(root);

    ordered_json top = header_json(summary);
    top["runs"] = ordered_json::array();
    for (std::size_t r = 0; r < result.runs.size(); ++r)
    {
        const StrategyRun &run = result.runs[r];
        const RunSummary &rs = summary.runs[r];
        const fs::path sub = root / rs.directory;
        fs::create_directories(sub);

        std::string csv = "rate_bps,cdf\n";
        for (const auto &p : run.cdf.points)
            csv += format_number(p.rate_bps) + "," + format_number(p.cdf) + "\n";
        write_file(sub / "cdf.csv", csv);

        std::string lines;
        for (const auto &log : run.slots)
            lines += slot_line(log) + "\n";
        write_file(sub / "slots.jsonl", lines);

        ordered_json one = header_json(summary);
        one["run"] = run_json(rs);
        write_file(sub / "summary.json", one.dump(2) + "\n");
        top["runs"].push_back(run_json(rs));
    }
    write_file(root / "summary.json", top.dump(2) + "\n");
}

ReportSummary load_report(const std::string &dir)
{
    const fs::path path = fs::path(dir) / "summary.json";
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    ReportSummary s;
    s.source = dir;
    try
    {
        const ordered_json j = ordered_json::parse(in);
        if (j.at("format").get<std::string>() != "cran-bench-report")
            throw std::runtime_error("not a cran-bench report");
        s.scenario_hash = parse_hex64(j.at("scenario_hash").get<std::string>());
        s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        s.num_slots = j.at("slots").get<int>();
        for (const auto &r : j.at("runs"))
            s.runs.push_back(run_from_json(r));
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::runtime_error("malformed '" + path.string() + "': " + e.what());
    }
    return s;
}

Comparison compare_strategies(std::vector<ReportSummary> reports)
{
    if (reports.empty())
        throw std::invalid_argument("nothing to compare");
    const ReportSummary &first = reports.front();
    for (const auto &r : reports)
    {
        if (r.scenario_hash != first.scenario_hash)
            throw std::invalid_argument("reports differ in scenario: " + hex64(first.scenario_hash) + " (" +
                                        first.source + ") vs " + hex64(r.scenario_hash) + " (" + r.source + ")");
        if (r.seeds != first.seeds)
            throw std::invalid_argument("reports differ in seeds: '" + first.source + "' vs '" + r.source + "'");
        if (r.num_slots != first.num_slots)
            throw std::invalid_argument("reports differ in slot count: '" + first.source + "' vs '" + r.source +
                                        "'");
    }

    Comparison c;
    c.reports = std::move(reports);

    std::map<std::string, int> occurrences;
    for (const auto &r : c.reports)
    {
        std::set<std::string> names;
        for (const auto &run : r.runs)
            names.insert(run.strategy);
        for (const auto &n : names)
            ++occurrences[n];
    }

    std::set<std::tuple<double, double, double>> points;
    for (const auto &r : c.reports)
        for (const auto &run : r.runs)
            if (!run.backhaul_ignored)
                points.insert({run.total_backhaul_bps, run.macro_bps, run.pico_bps});
    for (const auto &[total, macro, pico] : points)
    {
        c.total_backhaul_bps.push_back(total);
        c.points.push_back({macro, pico});
    }
    if (c.points.empty())
    {
        const double inf = std::numeric_limits<double>::infinity();
        c.total_backhaul_bps.push_back(inf);
        c.points.push_back({inf, inf});
    }

    for (std::size_t ri = 0; ri < c.reports.size(); ++ri)
    {
        const auto &r = c.reports[ri];
        std::vector<std::string> order;
        for (const auto &run : r.runs)
            if (std::find(order.begin(), order.end(), run.strategy) == order.end())
                order.push_back(run.strategy);
        for (const auto &name : order)
        {
            ComparisonEntry e;
            e.label = occurrences[name] > 1 ? name + "#" + std::to_string(ri + 1) : name;
            e.at.resize(c.points.size());
            for (const auto &run : r.runs)
            {
                if (run.strategy != name)
                    continue;
                e.backhaul_ignored = run.backhaul_ignored;
                for (std::size_t p = 0; p < c.points.size(); ++p)
                    if (run.backhaul_ignored ||
                        (run.macro_bps == c.points[p].first && run.pico_bps == c.points[p].second))
                        e.at[p] = run;
            }
            c.entries.push_back(std::move(e));
        }
    }
    if (c.entries.size() < 2)
        throw std::invalid_argument("need at least two strategies to compare");

    const ComparisonEntry &ref = c.entries.front();
    for (std::size_t e = 1; e < c.entries.size(); ++e)
    {
        Crossover x;
        x.reference = ref.label;
        x.other = c.entries[e].label;
        double prev_d = 0.0, prev_t = 0.0;
        bool have_prev = false;
        for (std::size_t p = 0; p < c.points.size() && !x.found; ++p)
        {
            const auto &a = ref.at[p];
            const auto &b = c.entries[e].at[p];
            const double t = c.total_backhaul_bps[p];
            if (!a || !b || !std::isfinite(t))
                continue;
            const double d = a->sum_rate_bps - b->sum_rate_bps;
            if (have_prev && prev_d != 0.0 && (d == 0.0 || (d > 0.0) != (prev_d > 0.0)))
            {
                x.found = true;
                x.total_backhaul_bps = prev_t + (t - prev_t) * prev_d / (prev_d - d);
            }
            prev_d = d;
            prev_t = t;
            have_prev = true;
        }
        c.crossovers.push_back(x);
    }
    return c;
}

std::string format_comparison(const Comparison &c)
{
    auto mbps = [](double bps) {
        char buf[32];
        if (!std::isfinite(bps))
            return std::string("inf");
        std::snprintf(buf, sizeof buf, "%.3f", bps / 1e6);
        return std::string(buf);
    };
    auto cell = [](const std::string &s, std::size_t width) {
        return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
    };

    std::ostringstream os;
    const ReportSummary &first = c.reports.front();
    os << "scenario " << hex64(first.scenario_hash) << ", seeds";
    for (auto s : first.seeds)
        os << " " << s;
    os << ", " << first.num_slots << " slots\n\n";

    std::size_t width = 14;
    for (const auto &e : c.entries)
        width = std::max(width, e.label.size() + 2);

    os << "average sum rate (Mbps)\n";
    os << cell("total_Mbps", 14) << cell("macro/pico", 16);
    for (const auto &e : c.entries)
        os << cell(e.label, width);
    os << "\n";
    for (std::size_t p = 0; p < c.points.size(); ++p)
    {
        os << cell(mbps(c.total_backhaul_bps[p]), 14)
           << cell(mbps(c.points[p].first) + "/" + mbps(c.points[p].second), 16);
        for (const auto &e : c.entries)
            os << cell(e.at[p] ? mbps(e.at[p]->sum_rate_bps) : "-", width);
        os << "\n";
    }

    const ComparisonEntry &ref = c.entries.front();
    os << "\ndeltas against " << ref.label << " (Mbps, other minus reference)\n";
    os << cell("strategy", width) << cell("total_Mbps", 14) << cell("d_sum", 12) << cell("d_p10", 12)
       << cell("d_p50", 12) << cell("d_p90", 12) << "\n";
    for (std::size_t e = 1; e < c.entries.size(); ++e)
        for (std::size_t p = 0; p < c.points.size(); ++p)
        {
            const auto &a = ref.at[p];
            const auto &b = c.entries[e].at[p];
            if (!a || !b)
                continue;
            os << cell(c.entries[e].label, width) << cell(mbps(c.total_backhaul_bps[p]), 14)
               << cell(mbps(b->sum_rate_bps - a->sum_rate_bps), 12) << cell(mbps(b->p10_bps - a->p10_bps), 12)
               << cell(mbps(b->p50_bps - a->p50_bps), 12) << cell(mbps(b->p90_bps - a->p90_bps), 12) << "\n";
        }

    os << "\ncrossover (sum rate)\n";
    for (const auto &x : c.crossovers)
    {
        os << x.reference << " vs " << x.other << ": ";
        if (x.found)
            os << "at about " << mbps(x.total_backhaul_bps) << " Mbps total backhaul\n";
        else
            os << "none within the sweep\n";
    }
    return os.str();
}

} // namespace cran
