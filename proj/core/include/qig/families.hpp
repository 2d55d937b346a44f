// Copyright 2026 The qiglab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/** @file
 * Fixed parametrized families used by the experiments.
 *
 * The families are hand-written constants so that results do not depend on
 * the experiment seed; only the sample points are drawn from the seed.
 * Most are "squared-linear" charts
 *
 *     S(theta) = (A0 + sum_k theta^k G_k)^2,   rho = S / Tr S (optional),
 *
 * which are positive near theta = 0, non-commuting, and have closed-form
 * first and second derivatives.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "qig/manifold.hpp"

namespace qig {

/// Squared-linear chart; `normalize` divides by the trace.
[[nodiscard]] ParametrizedFamily
squared_linear_family(std::string name, HermitianOperator a0,
                      std::vector<HermitianOperator> generators,
                      bool normalize);

/// Pauli matrices sigma_x, sigma_y, sigma_z.
[[nodiscard]] std::vector<HermitianOperator> pauli_matrices();

/// Qubit states, 3 parameters (a full chart).
[[nodiscard]] ParametrizedFamily qubit_state_family();
/// Qutrit states, 3-parameter sub-chart.
[[nodiscard]] ParametrizedFamily qutrit_state_family();
/// Qubit weights (unnormalised), 4 parameters.
[[nodiscard]] ParametrizedFamily qubit_weight_family();
/// Qutrit weights (unnormalised), 3 parameters.
[[nodiscard]] ParametrizedFamily qutrit_weight_family();
/// (I + theta . sigma) / 2 on the open Bloch ball.
[[nodiscard]] ParametrizedFamily bloch_family();
/// diag(p0 + sum_k theta^k d_k) with traceless diagonal directions; the
/// classical simplex as a commuting family of states.
[[nodiscard]] ParametrizedFamily diagonal_state_family(Eigen::Index n);

/// Radius of the sampling box around theta = 0.
inline constexpr double kGridRadius = 0.15;

/// `count` points drawn uniformly from [-radius, radius]^param_dim.
[[nodiscard]] std::vector<RealVector>
seeded_grid(int param_dim, int count, std::uint64_t seed,
            double radius = kGridRadius);

} // namespace qig
