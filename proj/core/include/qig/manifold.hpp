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
 * Positive definite matrices (weights), unit-trace states, tangent vectors
 * and the alpha-embeddings
 *
 *     l_alpha(sigma) = 2 / (1 - alpha) * sigma^((1 - alpha) / 2),
 *
 * with the limits l_{-1} = identity and l_{+1} = log, so that every
 * function here accepts alpha on the closed interval [-1, 1] unless noted.
 *
 * Tangent vectors are stored in the mixture (alpha = -1) representation,
 * i.e. as d sigma / d theta. The alpha-representation is its image under the
 * Frechet derivative of l_alpha, which in the eigenbasis of sigma is the
 * entrywise product with the divided-difference kernel of l_alpha.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qig/matrix_core.hpp"

namespace qig {

inline constexpr double kTraceTolerance = 1e-10;

/// Charts must keep the smallest eigenvalue above this floor.
inline constexpr double kChartSpectralFloor = 1e-6;

/// A strictly positive definite matrix; caches its spectrum.
class WeightMatrix {
  public:
    /// Throws NotPositiveDefinite (with the minimum eigenvalue) otherwise.
    explicit WeightMatrix(HermitianOperator m);

    [[nodiscard]] const HermitianOperator &matrix() const noexcept {
        return m_;
    }
    [[nodiscard]] const Spectrum &spectrum() const noexcept { return spec_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return m_.dim(); }
    [[nodiscard]] double min_eigenvalue() const { return spec_.min(); }
    [[nodiscard]] double trace() const { return m_.trace(); }
    [[nodiscard]] bool has_unit_trace() const;

    /// sigma^exponent.
    [[nodiscard]] HermitianOperator power(double exponent) const;

  private:
    HermitianOperator m_;
    Spectrum spec_;
};

/// A weight with unit trace (an invertible density matrix).
class StateMatrix : public WeightMatrix {
  public:
    explicit StateMatrix(HermitianOperator m);
    explicit StateMatrix(WeightMatrix w);

    [[nodiscard]] static StateMatrix maximally_mixed(Eigen::Index n);
};

/// A tangent vector at a weight (or state), held in mixture representation.
class TangentVector {
  public:
    /// Tangent to the extended manifold of weights.
    TangentVector(WeightMatrix base, HermitianOperator mixture);
    /// Tangent to the state manifold; the mixture representation must be
    /// traceless within kTraceTolerance.
    TangentVector(const StateMatrix &base, HermitianOperator mixture);

    [[nodiscard]] const WeightMatrix &base() const noexcept { return base_; }
    [[nodiscard]] const HermitianOperator &mixture_rep() const noexcept {
        return mixture_;
    }
    [[nodiscard]] bool on_states() const noexcept { return on_states_; }

  private:
    WeightMatrix base_;
    HermitianOperator mixture_;
    bool on_states_;
};

/// Frobenius distance between base points, used for base-mismatch checks.
[[nodiscard]] bool same_base(const WeightMatrix &a, const WeightMatrix &b,
                             double tol = 1e-12);

// ---------------------------------------------------------------------------
// embeddings

/// l_alpha as a scalar function, alpha in [-1, 1].
[[nodiscard]] ScalarFunction embedding_function(double alpha);
/// Inverse of l_alpha on its range.
[[nodiscard]] ScalarFunction inverse_embedding_function(double alpha);

/// Divided-difference kernel of l_alpha at the spectrum.
[[nodiscard]] RealMatrix embedding_kernel(const Spectrum &spec, double alpha);

/// l_alpha(sigma); alpha must lie strictly inside (-1, 1).
[[nodiscard]] HermitianOperator alpha_embed(const WeightMatrix &sigma,
                                            double alpha);

/// Same as alpha_embed but also accepts the limits alpha = +-1 (log and
/// identity).
[[nodiscard]] HermitianOperator embedding(const WeightMatrix &sigma,
                                          double alpha);

[[nodiscard]] HermitianOperator alpha_representation(const TangentVector &v,
                                                     double alpha);

/// Re-expresses an alpha-representation `from_alpha` as `to_alpha`.
[[nodiscard]] HermitianOperator representation_convert(
    const WeightMatrix &base, const HermitianOperator &w, double from_alpha,
    double to_alpha);

/// Tangent vector whose alpha-representation at `base` is `w`.
[[nodiscard]] TangentVector from_alpha_representation(
    const WeightMatrix &base, const HermitianOperator &w, double alpha);
[[nodiscard]] TangentVector from_alpha_representation(
    const StateMatrix &base, const HermitianOperator &w, double alpha);

/// |Tr(rho^((1 + alpha) / 2) A)|: zero iff A is a valid alpha-representation
/// of a vector tangent to the states.
[[nodiscard]] double tangency_residual(const WeightMatrix &rho, double alpha,
                                       const HermitianOperator &a);

/// A - Tr(rho^((1 + alpha) / 2) A) rho^((1 - alpha) / 2).
[[nodiscard]] HermitianOperator sphere_project(const StateMatrix &rho,
                                               double alpha,
                                               const HermitianOperator &a);

/// (Tr |A|^r)^(1/r).
[[nodiscard]] double schatten_norm(const HermitianOperator &a, double r);

// ---------------------------------------------------------------------------
// parametrized families

/// A smooth chart theta in R^d -> positive definite matrix.
///
/// Charts must be side-effect free. Without analytic derivatives the first
/// derivative is a central difference with step 1e-4 * max(1, |theta_i|).
class ParametrizedFamily {
  public:
    using Chart = std::function<Matrix(const RealVector &)>;
    using FirstDerivative = std::function<Matrix(const RealVector &, int)>;
    using SecondDerivative =
        std::function<Matrix(const RealVector &, int, int)>;

    enum class DerivativeMode { analytic, central_difference };

    ParametrizedFamily(std::string name, int param_dim, Chart chart,
                       bool unit_trace);

    /// Returns a copy that uses the given derivatives.
    [[nodiscard]] ParametrizedFamily
    with_analytic_derivatives(FirstDerivative first,
                              SecondDerivative second = {}) const;
    /// Returns a copy that differentiates numerically.
    [[nodiscard]] ParametrizedFamily with_central_differences() const;

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] int param_dim() const noexcept { return dim_; }
    [[nodiscard]] bool unit_trace() const noexcept { return unit_trace_; }
    [[nodiscard]] DerivativeMode mode() const noexcept {
        return first_ ? DerivativeMode::analytic
                      : DerivativeMode::central_difference;
    }
    [[nodiscard]] bool has_second_derivative() const noexcept {
        return static_cast<bool>(second_);
    }

    /// Throws ChartError naming theta on failure or on a spectrum below
    /// kChartSpectralFloor.
    [[nodiscard]] WeightMatrix point(const RealVector &theta) const;
    [[nodiscard]] StateMatrix state(const RealVector &theta) const;
    /// Raw chart output without positivity validation.
    [[nodiscard]] HermitianOperator chart_matrix(const RealVector &theta) const;

    [[nodiscard]] HermitianOperator first_derivative(const RealVector &theta,
                                                     int i) const;
    /// Analytic only; check has_second_derivative() first.
    [[nodiscard]] HermitianOperator second_derivative(const RealVector &theta,
                                                      int i, int j) const;

  private:
    void check_index(const RealVector &theta, int i) const;

    std::string name_;
    int dim_;
    Chart chart_;
    FirstDerivative first_;
    SecondDerivative second_;
    bool unit_trace_;
};

/// Finite-difference step for first derivatives in coordinate i.
[[nodiscard]] double first_derivative_step(double theta_i);

/// d sigma / d theta^i as a tangent vector (tangent to the states for
/// unit-trace families).
[[nodiscard]] TangentVector family_tangent(const ParametrizedFamily &family,
                                           const RealVector &theta, int i);

// ---------------------------------------------------------------------------
// affine coordinates

/// Orthogonal Hermitian basis of the N x N self-adjoint matrices: identity
/// first, then generalised Gell-Mann matrices (the Pauli matrices for N=2).
[[nodiscard]] std::vector<HermitianOperator> hermitian_basis(Eigen::Index n);

/// Coordinates xi with sum_i xi^i X_i = l_alpha(sigma).
[[nodiscard]] RealVector
affine_coordinates(const WeightMatrix &sigma, double alpha,
                   const std::vector<HermitianOperator> &basis);

/// The weight with l_alpha(sigma) = sum_i xi^i X_i.
[[nodiscard]] WeightMatrix
affine_point(const RealVector &xi, double alpha,
             const std::vector<HermitianOperator> &basis);

/// The chart xi -> affine_point(xi) with analytic first and second
/// derivatives, i.e. a flat coordinate system of the extended manifold for
/// the alpha-connection.
[[nodiscard]] ParametrizedFamily
affine_family(double alpha, std::vector<HermitianOperator> basis);

} // namespace qig
