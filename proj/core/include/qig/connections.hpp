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
 * Alpha-connections.
 *
 * On the extended manifold of weights the alpha-connection is the pull-back
 * of the trivial connection through l_alpha: the alpha-representation of
 * nabla_i d_j is d^2 l_alpha(sigma(theta)) / d theta^i d theta^j, and
 * parallel transport keeps the alpha-representation fixed. On the states the
 * result is additionally projected onto the tangent space of the sphere
 * ||l_alpha(rho)||_r = r before pulling back.
 *
 * Results are returned in mixture representation so that they can be fed
 * directly into a metric.
 */
#pragma once

#include <functional>

#include "qig/manifold.hpp"

namespace qig {

/// Where the connection lives.
enum class ManifoldKind { extended, states };

[[nodiscard]] const char *to_string(ManifoldKind kind);

/// Second-derivative evaluation: exact chain rule through second divided
/// differences (needs analytic family derivatives), or a 3x3 central stencil
/// on l_alpha(sigma(theta)).
enum class SecondDerivativeScheme { automatic, analytic, stencil };

/// Stencil step for second derivatives in coordinate i.
[[nodiscard]] double second_derivative_step(double theta_i);

struct CovariantDerivativeResult {
    WeightMatrix base;
    TangentVector vector;           ///< mixture representation
    HermitianOperator alpha_rep;    ///< alpha-representation of the result
};

/// d^2 l_alpha(sigma(theta)) / d theta^i d theta^j.
[[nodiscard]] HermitianOperator
embedded_second_derivative(const ParametrizedFamily &family,
                           const RealVector &theta, int i, int j, double alpha,
                           SecondDerivativeScheme scheme =
                               SecondDerivativeScheme::automatic);

/// nabla-hat^(alpha)_{d_i} d_j on the weights.
[[nodiscard]] CovariantDerivativeResult
ext_covariant_derivative(const ParametrizedFamily &family,
                         const RealVector &theta, int i, int j, double alpha,
                         SecondDerivativeScheme scheme =
                             SecondDerivativeScheme::automatic);

/// nabla^(alpha)_{d_i} d_j on the states (family must have unit trace).
[[nodiscard]] CovariantDerivativeResult
covariant_derivative_on_M(const ParametrizedFamily &family,
                          const RealVector &theta, int i, int j, double alpha,
                          SecondDerivativeScheme scheme =
                              SecondDerivativeScheme::automatic);

/// Dispatches to one of the two above.
[[nodiscard]] CovariantDerivativeResult
covariant_derivative(ManifoldKind kind, const ParametrizedFamily &family,
                     const RealVector &theta, int i, int j, double alpha,
                     SecondDerivativeScheme scheme =
                         SecondDerivativeScheme::automatic);

/// ((1 + alpha) / 2) nabla^(1) + ((1 - alpha) / 2) nabla^(-1) on the states,
/// combined in mixture representation.
[[nodiscard]] CovariantDerivativeResult
convex_mixture_derivative(const ParametrizedFamily &family,
                          const RealVector &theta, int i, int j, double alpha,
                          SecondDerivativeScheme scheme =
                              SecondDerivativeScheme::automatic);

// ---------------------------------------------------------------------------
// curves and transport

/// A curve t in [0, 1] -> family(path(t)), sampled with step_count steps.
struct CurveSpec {
    ParametrizedFamily family;
    std::function<RealVector(double)> path;
    int step_count = 256;

    /// family(path(t)).
    [[nodiscard]] WeightMatrix point(double t) const;
    [[nodiscard]] StateMatrix state(double t) const;
    /// The same curve restricted to [0, t_end] and reparametrised to [0, 1].
    [[nodiscard]] CurveSpec truncated(double t_end) const;
    /// Largest Frobenius jump between consecutive samples.
    [[nodiscard]] double max_step_jump() const;
};

/// Largest admissible Frobenius jump between consecutive curve samples.
inline constexpr double kMaxCurveJump = 0.5;

/// Straight segment between two parameter points.
[[nodiscard]] std::function<RealVector(double)>
segment_path(RealVector from, RealVector to);
/// Piecewise-linear path through the given parameter points, uniform in t
/// per segment.
[[nodiscard]] std::function<RealVector(double)>
polyline_path(std::vector<RealVector> points);

/// Flat transport on the weights: keeps the alpha-representation.
[[nodiscard]] TangentVector flat_transport(const WeightMatrix &to,
                                           const TangentVector &v,
                                           double alpha);

/// Flat transport along the curve (path independent).
[[nodiscard]] TangentVector parallel_transport_ext(const CurveSpec &curve,
                                                   const TangentVector &v,
                                                   double alpha);

/// Projected transport on the states with curve.step_count steps: the
/// alpha-representation is carried unchanged and re-projected at each
/// sample. Throws DiscretizationError if the sampling is too coarse.
[[nodiscard]] TangentVector parallel_transport_on_M(const CurveSpec &curve,
                                                    const TangentVector &v,
                                                    double alpha);

/// 2 T(n) - T(n / 2) with n = curve.step_count (first-order scheme).
[[nodiscard]] TangentVector
parallel_transport_on_M_extrapolated(const CurveSpec &curve,
                                     const TangentVector &v, double alpha);

/// Dispatch: flat transport on the weights, extrapolated projected transport
/// on the states.
[[nodiscard]] TangentVector parallel_transport(ManifoldKind kind,
                                               const CurveSpec &curve,
                                               const TangentVector &v,
                                               double alpha);

} // namespace qig
