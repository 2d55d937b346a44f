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
 * Dense Hermitian spectral calculus.
 *
 * Everything downstream (embeddings, metric kernels, connections) is built
 * from three primitives defined here: the eigendecomposition of a Hermitian
 * matrix, matrix functions U f(diag) U^dagger, and their first and second
 * Frechet derivatives expressed entrywise in the eigenbasis through divided
 * differences (the Daleckii-Krein formulae).
 */
#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace qig {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Absolute tolerance used to accept a matrix as self-adjoint.
inline constexpr double kHermiticityTolerance = 1e-12;

/// Relative gap below which two eigenvalues are treated as equal.
inline constexpr double kDegeneracyThreshold = 1e-10;

/// max_ij |A_ij - conj(A_ji)|.
[[nodiscard]] double hermiticity_deviation(const Matrix &a);

/// N x N complex self-adjoint matrix. Stored exactly Hermitian.
class HermitianOperator {
  public:
    HermitianOperator() = default;

    /// Validates self-adjointness within kHermiticityTolerance (absolute)
    /// and throws SymmetryViolation otherwise.
    explicit HermitianOperator(const Matrix &m);

    /// (m + m^dagger) / 2 without validation. For results of spectral
    /// calculus where drift is roundoff only.
    [[nodiscard]] static HermitianOperator symmetrized(const Matrix &m);

    [[nodiscard]] static HermitianOperator zero(Eigen::Index n);
    [[nodiscard]] static HermitianOperator identity(Eigen::Index n);
    [[nodiscard]] static HermitianOperator diagonal(const RealVector &d);

    [[nodiscard]] const Matrix &matrix() const noexcept { return m_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
    [[nodiscard]] double trace() const { return m_.trace().real(); }
    [[nodiscard]] double norm() const { return m_.norm(); }

    HermitianOperator &operator+=(const HermitianOperator &o);
    HermitianOperator &operator-=(const HermitianOperator &o);
    HermitianOperator &operator*=(double s);

    friend HermitianOperator operator+(HermitianOperator a,
                                       const HermitianOperator &b) {
        return a += b;
    }
    friend HermitianOperator operator-(HermitianOperator a,
                                       const HermitianOperator &b) {
        return a -= b;
    }
    friend HermitianOperator operator*(double s, HermitianOperator a) {
        return a *= s;
    }
    friend HermitianOperator operator*(HermitianOperator a, double s) {
        return a *= s;
    }
    friend HermitianOperator operator-(HermitianOperator a) {
        return a *= -1.0;
    }

  private:
    Matrix m_;
};

/// Eigenvalues (ascending) and the unitary whose columns are eigenvectors.
struct Spectrum {
    RealVector eigenvalues;
    Matrix unitary;

    [[nodiscard]] Eigen::Index dim() const { return eigenvalues.size(); }
    [[nodiscard]] double min() const { return eigenvalues(0); }
    [[nodiscard]] double max() const {
        return eigenvalues(eigenvalues.size() - 1);
    }
    /// U^dagger M U.
    [[nodiscard]] Matrix to_eigenbasis(const Matrix &m) const;
    /// U M U^dagger.
    [[nodiscard]] Matrix from_eigenbasis(const Matrix &m) const;
};

/// A smooth real function together with its first two derivatives.
///
/// `domain_lower` is an open lower bound on admissible arguments (e.g. 0 for
/// log); evaluation below it is a DomainError naming the argument.
struct ScalarFunction {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> first;
    std::function<double(double)> second;
    double domain_lower = -std::numeric_limits<double>::infinity();

    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] double d1(double x) const;
    [[nodiscard]] double d2(double x) const;
};

namespace fn {
[[nodiscard]] ScalarFunction identity();
[[nodiscard]] ScalarFunction square();
[[nodiscard]] ScalarFunction sqrt();
[[nodiscard]] ScalarFunction log();
[[nodiscard]] ScalarFunction exp();
/// x^p on (0, inf).
[[nodiscard]] ScalarFunction power(double p);
/// c * f.
[[nodiscard]] ScalarFunction scaled(double c, ScalarFunction f);
} // namespace fn

/// True when |a - b| <= kDegeneracyThreshold * max(1, |a|, |b|).
[[nodiscard]] bool eigenvalues_coincide(double a, double b);

/// f[x, y]; f'((x + y) / 2) on coinciding arguments.
[[nodiscard]] double divided_difference(const ScalarFunction &f, double x,
                                        double y);

/// f[x, y, z], symmetric in its arguments; f''(mean) / 2 when all coincide.
[[nodiscard]] double divided_difference(const ScalarFunction &f, double x,
                                        double y, double z);

/// K_ij = f[lambda_i, lambda_j].
[[nodiscard]] RealMatrix divided_difference_matrix(const ScalarFunction &f,
                                                   const RealVector &lambda);

/// Throws SymmetryViolation for non-self-adjoint input.
[[nodiscard]] Spectrum spectral_decompose(const Matrix &a);
[[nodiscard]] Spectrum spectral_decompose(const HermitianOperator &a);

/// U diag(f(lambda)) U^dagger. DomainError if f is undefined at an
/// eigenvalue.
[[nodiscard]] HermitianOperator apply_scalar_function(const Spectrum &spec,
                                                      const ScalarFunction &f);

/// U (K o (U^dagger M U)) U^dagger for an entrywise kernel K.
[[nodiscard]] Matrix apply_entrywise_kernel(const Spectrum &spec,
                                            const RealMatrix &kernel,
                                            const Matrix &m);

/// Directional derivative Df(A)[D] of the matrix function at A = spec.
[[nodiscard]] HermitianOperator frechet_derivative(const Spectrum &spec,
                                                   const HermitianOperator &d,
                                                   const ScalarFunction &f);

/// Second directional derivative D^2 f(A)[E, F] (symmetric in E, F).
[[nodiscard]] HermitianOperator
second_frechet_derivative(const Spectrum &spec, const HermitianOperator &e,
                          const HermitianOperator &f_dir,
                          const ScalarFunction &f);

/// Tr(A^dagger B). DimensionMismatch on unequal shapes.
[[nodiscard]] Complex hs_inner(const Matrix &a, const Matrix &b);
[[nodiscard]] double hs_inner(const HermitianOperator &a,
                              const HermitianOperator &b);

/// [A, B] = AB - BA.
[[nodiscard]] Matrix commutator(const Matrix &a, const Matrix &b);

/// D = commutant_part + [sigma, delta], with commutant_part in the commutant
/// of sigma and delta anti-self-adjoint; the two summands are Hilbert-Schmidt
/// orthogonal.
struct CommutantSplit {
    HermitianOperator commutant_part;
    Matrix delta;
};

[[nodiscard]] CommutantSplit commutant_split(const Spectrum &sigma,
                                             const HermitianOperator &d);

/// Rebuilds the matrix U diag(lambda) U^dagger.
[[nodiscard]] HermitianOperator reconstruct(const Spectrum &spec);

} // namespace qig
