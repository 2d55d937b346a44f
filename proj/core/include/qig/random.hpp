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
 * Seeded sampling of states, tangent vectors and channels.
 *
 * Every sampler draws from an explicit Rng so that experiments are
 * reproducible from a single 64-bit seed. Independent sub-streams are
 * derived with split_seed().
 */
#pragma once

#include <cstdint>
#include <random>

#include "qig/manifold.hpp"
#include "qig/metrics.hpp"

namespace qig {

/// splitmix64 mix of (seed, index); used to derive sub-stream seeds.
[[nodiscard]] std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] double normal() { return normal_(engine_); }
    [[nodiscard]] double uniform(double lo, double hi);
    [[nodiscard]] int uniform_int(int lo, int hi);
    [[nodiscard]] Complex complex_normal();

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Default smallest eigenvalue of sampled states.
inline constexpr double kSampleSpectralFloor = 0.05;

/// Hermitian matrix with Frobenius norm `scale`.
[[nodiscard]] HermitianOperator random_hermitian(Rng &rng, Eigen::Index n,
                                                 double scale = 1.0);
/// Traceless Hermitian matrix with Frobenius norm `scale`.
[[nodiscard]] HermitianOperator random_traceless(Rng &rng, Eigen::Index n,
                                                 double scale = 1.0);
/// Haar-distributed unitary (QR of a complex Ginibre matrix).
[[nodiscard]] Matrix random_unitary(Rng &rng, Eigen::Index n);
/// U diag(p) U^dagger, p uniform on the simplex shifted to eigenvalues
/// >= floor.
[[nodiscard]] StateMatrix random_state(Rng &rng, Eigen::Index n,
                                       double floor = kSampleSpectralFloor);
/// A random state rescaled by a factor in [0.5, 2].
[[nodiscard]] WeightMatrix random_weight(Rng &rng, Eigen::Index n,
                                         double floor = kSampleSpectralFloor);
/// Random traceless tangent vector at rho, Frobenius norm 1.
[[nodiscard]] TangentVector random_tangent(Rng &rng, const StateMatrix &rho);
/// Channel from a random isometry C^n_in -> C^n_out (x) C^kraus_count.
[[nodiscard]] KrausChannel random_channel(Rng &rng, Eigen::Index n_in,
                                          Eigen::Index n_out, int kraus_count);

} // namespace qig
