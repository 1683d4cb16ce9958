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

#include "cran/slot_result.hpp"

namespace cran
{

/// Quantizer resolution above which the quantization noise is negligible;
/// per-antenna fronthaul beyond this many bits per symbol is not used.
inline constexpr double kMaxQuantizerBits = 64.0;

struct CompressionOptions
{
    int max_iterations = 100;
    double tolerance = 1e-4;
};

/// Fronthaul bits per complex symbol of every antenna: C_l / (M_l * bandwidth),
/// capped at kMaxQuantizerBits.
Eigen::VectorXd fronthaul_bits_per_symbol(const SlotProblem &problem);

/// kappa_i = gamma_q / (2^{C_i} - 1); +inf for an antenna without fronthaul.
Eigen::VectorXd quantization_kappa(const SlotProblem &problem);

/// q_i = kappa_i sum_k |w_ki|^2, the noise that exactly exhausts the fronthaul
/// (0 where kappa is infinite, since those antennas are silent).
Eigen::VectorXd implied_quantization(const Beamformers &W, const Eigen::VectorXd &kappa);

/// Convex step of the adaptive scheme with q eliminated: adds
/// diag(cost .* kappa) to every A_k and turns the per-antenna power
/// constraint into sum_k (1 + kappa_i) |w_ki|^2 <= P_i. Antennas with infinite
/// kappa are pinned to zero.
QcqpProblem eliminate_quantization(std::vector<HermitianForm> forms, const Eigen::VectorXd &cost,
                                   const Eigen::VectorXd &kappa, const Eigen::VectorXd &power, BoolArray pins);

/// Fixed-quantization noise floor and the remaining transmit budget per antenna.
struct FixedQuantization
{
    Eigen::VectorXd q;
    Eigen::VectorXd budget;
    std::vector<int> unusable; // antennas with 2^{C_i} - 1 <= gamma_q
};

FixedQuantization fixed_quantization(const SlotProblem &problem);

SlotResult optimize_compression_adaptive(const SlotProblem &problem, const CompressionOptions &options = {});

/// Throws nothing for unusable antennas: each one is reported as a
/// "fronthaul below quantization floor" warning, its budget is 0 and it
/// carries only quantization noise.
SlotResult optimize_compression_fixed(const SlotProblem &problem, const CompressionOptions &options = {});

} // namespace cran
