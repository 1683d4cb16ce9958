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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cran
{

enum class Tier
{
    macro,
    pico
};

const char *tier_name(Tier tier);

// Thrown for malformed scenario or experiment files. `line` is 1-based, 0 when
// the problem is not tied to a particular line (e.g. a cross-field invariant).
class ConfigError : public std::invalid_argument
{
  public:
    ConfigError(const std::string &field, int line, const std::string &what);
    const std::string &field() const { return field_; }
    int line() const { return line_; }

  private:
    std::string field_;
    int line_;
};

/// Scenario parameters. Physical quantities use the units in the field names;
/// the two gaps are stored in dB and converted to linear scale on demand.
struct NetworkConfig
{
    int num_cells = 7;
    int macro_per_cell = 1;
    int picos_per_cell = 3;
    int users_per_cell = 30;
    int antennas_macro = 1;
    int antennas_pico = 1;
    int rx_antennas = 1;
    double intercell_distance_km = 0.8;
    double bandwidth_hz = 10e6;
    double power_macro_dbm = 43.0; // per antenna
    double power_pico_dbm = 30.0;  // per antenna
    double antenna_gain_dbi = 15.0;
    double noise_psd_dbm_hz = -150.0;
    double shadowing_std_db = 8.0;
    double gamma_m_db = 9.0;
    double gamma_q_db = 4.3;
    double backhaul_macro_bps = 40e6;
    double backhaul_pico_bps = 20e6;
    int csi_cluster_size = 0; // 0 means full CSI
    std::uint64_t rng_seed = 1;

    void validate() const;

    int num_bs() const { return num_cells * (macro_per_cell + picos_per_cell); }
    int num_users() const { return num_cells * users_per_cell; }
    double gamma_m() const;
    double gamma_q() const;
    double noise_power_mw() const;
    double power_per_antenna_mw(Tier tier) const;
    int antennas(Tier tier) const { return tier == Tier::macro ? antennas_macro : antennas_pico; }
    double backhaul_bps(Tier tier) const { return tier == Tier::macro ? backhaul_macro_bps : backhaul_pico_bps; }
    bool full_csi() const { return csi_cluster_size == 0; }

    // Canonical "key = value" rendering; parse_network_config(to_string()) round-trips.
    std::string to_string() const;
};

/// Gap-to-rate-distortion presets for the quantizer, as dB values.
/// Known names: "scalar-4.3dB", "uniform-scalar", "entropy-coded", "vector".
double gamma_q_preset_db(const std::string &name);

double db_to_linear(double db);
double linear_to_db(double linear);

/// Applies one "key = value" assignment to `cfg`. Returns false when the key
/// is not a NetworkConfig field; throws ConfigError when the value is bad.
bool apply_network_field(NetworkConfig &cfg, const std::string &key, const std::string &value, int line);

NetworkConfig parse_network_config(const std::string &text);

// Tokenized "key = value" lines with their 1-based line numbers. Blank lines
// and '#' comments are dropped.
struct ConfigLine
{
    std::string key;
    std::string value;
    int line = 0;
};
std::vector<ConfigLine> tokenize_config(const std::string &text);

std::string read_text_file(const std::string &path);

/// Splits on `sep` and trims every item; empty items are dropped.
std::vector<std::string> split_list(const std::string &text, char sep = ',');

// Numbers accept an optional k/M/G suffix ("40M" == 40e6) and "inf".
double parse_number(const std::string &text, const std::string &field, int line);
long long parse_integer(const std::string &text, const std::string &field, int line);

} // namespace cran
