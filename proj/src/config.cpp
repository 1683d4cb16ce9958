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

#include "cran/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

namespace cran
{

namespace
{

std::string trim(const std::string &s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s)
{
    for (auto &c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string format_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace

const char *tier_name(Tier tier)
{
    return tier == Tier::macro ? "macro" : "pico";
}

ConfigError::ConfigError(const std::string &field, int line, const std::string &what)
    : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ", field '" + field + "': " + what
                                     : "field '" + field + "': " + what),
      field_(field), line_(line)
{
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

double NetworkConfig::gamma_m() const
{
    return db_to_linear(gamma_m_db);
}

double NetworkConfig::gamma_q() const
{
    return db_to_linear(gamma_q_db);
}

double NetworkConfig::noise_power_mw() const
{
    return db_to_linear(noise_psd_dbm_hz) * bandwidth_hz;
}

double NetworkConfig::power_per_antenna_mw(Tier tier) const
{
    return db_to_linear(tier == Tier::macro ? power_macro_dbm : power_pico_dbm);
}

void NetworkConfig::validate() const
{
    auto require = [](bool ok, const char *field, const std::string &msg) {
        if (!ok)
            throw ConfigError(field, 0, msg);
    };
    require(num_cells >= 1, "num_cells", "must be >= 1");
    require(macro_per_cell == 1, "macro_per_cell", "exactly one macro BS per cell is supported");
    require(picos_per_cell >= 0, "picos_per_cell", "must be >= 0");
    require(users_per_cell >= 1, "users_per_cell", "must be >= 1");
    require(antennas_macro >= 1, "antennas_macro", "must be >= 1");
    require(antennas_pico >= 1, "antennas_pico", "must be >= 1");
    require(rx_antennas >= 1, "rx_antennas", "must be >= 1");
    auto positive = [&](double v, const char *field) {
        require(std::isfinite(v) && v > 0.0, field, "must be finite and positive");
    };
    positive(intercell_distance_km, "intercell_distance");
    positive(bandwidth_hz, "bandwidth");
    require(std::isfinite(power_macro_dbm), "power_macro_per_antenna", "must be finite");
    require(std::isfinite(power_pico_dbm), "power_pico_per_antenna", "must be finite");
    require(std::isfinite(antenna_gain_dbi), "antenna_gain", "must be finite");
    require(std::isfinite(noise_psd_dbm_hz), "noise_psd", "must be finite");
    require(std::isfinite(shadowing_std_db) && shadowing_std_db >= 0.0, "shadowing_std", "must be >= 0");
    require(std::isfinite(gamma_m_db) && gamma_m_db >= 0.0, "gamma_m", "must be >= 0 dB");
    require(std::isfinite(gamma_q_db) && gamma_q_db >= 0.0, "gamma_q", "must be >= 0 dB");
    // +inf is accepted: it is the unlimited-backhaul reference.
    require(!std::isnan(backhaul_macro_bps) && backhaul_macro_bps >= 0.0, "backhaul_macro", "must be >= 0");
    require(!std::isnan(backhaul_pico_bps) && backhaul_pico_bps >= 0.0, "backhaul_pico", "must be >= 0");
    require(csi_cluster_size >= 0 && csi_cluster_size <= num_bs(), "csi_cluster_size",
            "must be 'full' or between 1 and the total BS count");
}

std::string NetworkConfig::to_string() const
{
    std::ostringstream os;
    os << "num_cells = " << num_cells << "\n"
       << "macro_per_cell = " << macro_per_cell << "\n"
       << "picos_per_cell = " << picos_per_cell << "\n"
       << "users_per_cell = " << users_per_cell << "\n"
       << "antennas_macro = " << antennas_macro << "\n"
       << "antennas_pico = " << antennas_pico << "\n"
       << "rx_antennas = " << rx_antennas << "\n"
       << "intercell_distance = " << format_double(intercell_distance_km) << "\n"
       << "bandwidth = " << format_double(bandwidth_hz) << "\n"
       << "power_macro_per_antenna = " << format_double(power_macro_dbm) << "\n"
       << "power_pico_per_antenna = " << format_double(power_pico_dbm) << "\n"
       << "antenna_gain = " << format_double(antenna_gain_dbi) << "\n"
       << "noise_psd = " << format_double(noise_psd_dbm_hz) << "\n"
       << "shadowing_std = " << format_double(shadowing_std_db) << "\n"
       << "gamma_m = " << format_double(gamma_m_db) << "\n"
       << "gamma_q = " << format_double(gamma_q_db) << "\n"
       << "backhaul_macro = " << format_double(backhaul_macro_bps) << "\n"
       << "backhaul_pico = " << format_double(backhaul_pico_bps) << "\n"
       << "csi_cluster_size = " << (csi_cluster_size == 0 ? std::string("full") : std::to_string(csi_cluster_size))
       << "\n"
       << "rng_seed = " << rng_seed << "\n";
    return os.str();
}

double gamma_q_preset_db(const std::string &name)
{
    const std::string n = lower(name);
    if (n == "scalar-4.3db")
        return 4.3;
    if (n == "uniform-scalar")
        return linear_to_db(std::sqrt(3.0) * std::numbers::pi / 2.0);
    if (n == "entropy-coded")
        return linear_to_db(std::numbers::pi * std::numbers::e / 6.0);
    if (n == "vector")
        return 0.0;
    throw ConfigError("gamma_q_preset", 0,
                      "unknown preset '" + name + "' (scalar-4.3dB, uniform-scalar, entropy-coded, vector)");
}

double parse_number(const std::string &text, const std::string &field, int line)
{
    std::string t = trim(text);
    if (t.empty())
        throw ConfigError(field, line, "expected a number");
    const std::string lt = lower(t);
    if (lt == "inf" || lt == "+inf" || lt == "infinity")
        return std::numeric_limits<double>::infinity();
    double scale = 1.0;
    switch (t.back())
    {
    case 'k':
    case 'K':
        scale = 1e3;
        break;
    case 'M':
        scale = 1e6;
        break;
    case 'G':
        scale = 1e9;
        break;
    default:
        break;
    }
    if (scale != 1.0)
        t.pop_back();
    std::size_t pos = 0;
    double v = 0.0;
    try
    {
        v = std::stod(t, &pos);
    }
    catch (const std::exception &)
    {
        throw ConfigError(field, line, "expected a number, got '" + text + "'");
    }
    if (pos != t.size())
        throw ConfigError(field, line, "trailing characters in '" + text + "'");
    return v * scale;
}

long long parse_integer(const std::string &text, const std::string &field, int line)
{
    const std::string t = trim(text);
    std::size_t pos = 0;
    long long v = 0;
    try
    {
        v = std::stoll(t, &pos);
    }
    catch (const std::exception &)
    {
        throw ConfigError(field, line, "expected an integer, got '" + text + "'");
    }
    if (pos != t.size())
        throw ConfigError(field, line, "expected an integer, got '" + text + "'");
    return v;
}

std::vector<ConfigLine> tokenize_config(const std::string &text)
{
    std::vector<ConfigLine> out;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw))
    {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        raw = trim(raw);
        if (raw.empty())
            continue;
        const auto eq = raw.find('=');
        if (eq == std::string::npos)
            throw ConfigError(raw, line, "expected 'key = value'");
        ConfigLine cl;
        cl.key = lower(trim(raw.substr(0, eq)));
        cl.value = trim(raw.substr(eq + 1));
        cl.line = line;
        if (cl.key.empty())
            throw ConfigError("", line, "missing key");
        out.push_back(std::move(cl));
    }
    return out;
}

bool apply_network_field(NetworkConfig &cfg, const std::string &key, const std::string &value, int line)
{
    auto integer = [&](int &dst) { dst = static_cast<int>(parse_integer(value, key, line)); };
    auto number = [&](double &dst) { dst = parse_number(value, key, line); };

    if (key == "num_cells")
        integer(cfg.num_cells);
    else if (key == "macro_per_cell")
        integer(cfg.macro_per_cell);
    else if (key == "picos_per_cell")
        integer(cfg.picos_per_cell);
    else if (key == "users_per_cell")
        integer(cfg.users_per_cell);
    else if (key == "antennas_macro")
        integer(cfg.antennas_macro);
    else if (key == "antennas_pico")
        integer(cfg.antennas_pico);
    else if (key == "rx_antennas")
        integer(cfg.rx_antennas);
    else if (key == "intercell_distance")
        number(cfg.intercell_distance_km);
    else if (key == "bandwidth")
        number(cfg.bandwidth_hz);
    else if (key == "power_macro_per_antenna")
        number(cfg.power_macro_dbm);
    else if (key == "power_pico_per_antenna")
        number(cfg.power_pico_dbm);
    else if (key == "antenna_gain")
        number(cfg.antenna_gain_dbi);
    else if (key == "noise_psd")
        number(cfg.noise_psd_dbm_hz);
    else if (key == "shadowing_std")
        number(cfg.shadowing_std_db);
    else if (key == "gamma_m")
        number(cfg.gamma_m_db);
    else if (key == "gamma_q")
        number(cfg.gamma_q_db);
    else if (key == "gamma_q_preset")
        cfg.gamma_q_db = gamma_q_preset_db(value);
    else if (key == "backhaul_macro")
        number(cfg.backhaul_macro_bps);
    else if (key == "backhaul_pico")
        number(cfg.backhaul_pico_bps);
    else if (key == "csi_cluster_size")
    {
        if (lower(value) == "full")
            cfg.csi_cluster_size = 0;
        else
        {
            const long long v = parse_integer(value, key, line);
            if (v < 1)
                throw ConfigError(key, line, "must be 'full' or >= 1");
            cfg.csi_cluster_size = static_cast<int>(v);
        }
    }
    else if (key == "rng_seed")
    {
        const long long v = parse_integer(value, key, line);
        if (v < 0)
            throw ConfigError(key, line, "must be >= 0");
        cfg.rng_seed = static_cast<std::uint64_t>(v);
    }
    else
        return false;
    return true;
}

NetworkConfig parse_network_config(const std::string &text)
{
    NetworkConfig cfg;
    for (const auto &cl : tokenize_config(text))
    {
        if (!apply_network_field(cfg, cl.key, cl.value, cl.line))
            throw ConfigError(cl.key, cl.line, "unknown field");
    }
    cfg.validate();
    return cfg;
}

std::vector<std::string> split_list(const std::string &text, char sep)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, sep))
        if (auto t = trim(item); !t.empty())
            out.push_back(std::move(t));
    return out;
}

std::string read_text_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace cran
