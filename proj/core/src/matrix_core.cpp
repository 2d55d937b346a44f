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

#include "qig/matrix_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "qig/error.hpp"

namespace qig {

double hermiticity_deviation(const Matrix &a) {
    if (a.rows() != a.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void require_self_adjoint(const Matrix &m, const char *where) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream msg;
        msg << where << ": expected a non-empty square matrix, got "
            << m.rows() << "x" << m.cols();
        throw DimensionMismatch(msg.str());
    }
    const double dev = hermiticity_deviation(m);
    if (!(dev <= kHermiticityTolerance)) {
        std::ostringstream msg;
        msg << where << ": matrix is not self-adjoint (max |A_ij - conj(A_ji)| = "
            << dev << ", tolerance " << kHermiticityTolerance << ")";
        throw SymmetryViolation(msg.str(), dev);
    }
}

} // namespace

HermitianOperator::HermitianOperator(const Matrix &m) {
    require_self_adjoint(m, "HermitianOperator");
    m_ = (m + m.adjoint()) * 0.5;
}

HermitianOperator HermitianOperator::symmetrized(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("HermitianOperator::symmetrized: non-square");
    }
    HermitianOperator h;
    h.m_ = (m + m.adjoint()) * 0.5;
    return h;
}

HermitianOperator HermitianOperator::zero(Eigen::Index n) {
    return symmetrized(Matrix::Zero(n, n));
}

HermitianOperator HermitianOperator::identity(Eigen::Index n) {
    return symmetrized(Matrix::Identity(n, n));
}

HermitianOperator HermitianOperator::diagonal(const RealVector &d) {
    return symmetrized(d.cast<Complex>().asDiagonal().toDenseMatrix());
}

HermitianOperator &HermitianOperator::operator+=(const HermitianOperator &o) {
    if (o.dim() != dim()) {
        throw DimensionMismatch("HermitianOperator: dimension mismatch in +");
    }
    m_ += o.m_;
    return *this;
}

HermitianOperator &HermitianOperator::operator-=(const HermitianOperator &o) {
    if (o.dim() != dim()) {
        throw DimensionMismatch("HermitianOperator: dimension mismatch in -");
    }
    m_ -= o.m_;
    return *this;
}

HermitianOperator &HermitianOperator::operator*=(double s) {
    m_ *= s;
    return *this;
}

Matrix Spectrum::to_eigenbasis(const Matrix &m) const {
    return unitary.adjoint() * m * unitary;
}

Matrix Spectrum::from_eigenbasis(const Matrix &m) const {
    return unitary * m * unitary.adjoint();
}

// ---------------------------------------------------------------------------
// scalar functions

namespace {

double checked(const ScalarFunction &f, double x, double y, const char *what) {
    if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg << "function '" << f.name << "' (" << what
            << ") is undefined at eigenvalue " << x;
        throw DomainError(msg.str(), x);
    }
    return y;
}

void check_domain(const ScalarFunction &f, double x) {
    if (!(x > f.domain_lower)) {
        std::ostringstream msg;
        msg << "function '" << f.name << "' is undefined at eigenvalue " << x
            << " (domain is x > " << f.domain_lower << ")";
        throw DomainError(msg.str(), x);
    }
}

} // namespace

double ScalarFunction::operator()(double x) const {
    check_domain(*this, x);
    return checked(*this, x, value(x), "value");
}

double ScalarFunction::d1(double x) const {
    check_domain(*this, x);
    return checked(*this, x, first(x), "first derivative");
}

double ScalarFunction::d2(double x) const {
    check_domain(*this, x);
    return checked(*this, x, second(x), "second derivative");
}

namespace fn {

ScalarFunction identity() {
    return {"identity", [](double x) { return x; }, [](double) { return 1.0; },
            [](double) { return 0.0; }};
}

ScalarFunction square() {
    return {"square", [](double x) { return x * x; },
            [](double x) { return 2.0 * x; }, [](double) { return 2.0; }};
}

ScalarFunction sqrt() {
    return {"sqrt", [](double x) { return std::sqrt(x); },
            [](double x) { return 0.5 / std::sqrt(x); },
            [](double x) { return -0.25 / (x * std::sqrt(x)); }, 0.0};
}

ScalarFunction log() {
    return {"log", [](double x) { return std::log(x); },
            [](double x) { return 1.0 / x; },
            [](double x) { return -1.0 / (x * x); }, 0.0};
}

ScalarFunction exp() {
    return {"exp", [](double x) { return std::exp(x); },
            [](double x) { return std::exp(x); },
            [](double x) { return std::exp(x); }};
}

ScalarFunction power(double p) {
    std::ostringstream name;
    name << "pow(" << p << ")";
    return {name.str(), [p](double x) { return std::pow(x, p); },
            [p](double x) { return p * std::pow(x, p - 1.0); },
            [p](double x) { return p * (p - 1.0) * std::pow(x, p - 2.0); },
            0.0};
}

ScalarFunction scaled(double c, ScalarFunction f) {
    ScalarFunction g;
    std::ostringstream name;
    name << c << "*" << f.name;
    g.name = name.str();
    g.domain_lower = f.domain_lower;
    g.value = [c, v = f.value](double x) { return c * v(x); };
    g.first = [c, d = f.first](double x) { return c * d(x); };
    g.second = [c, d = f.second](double x) { return c * d(x); };
    return g;
}

} // namespace fn

bool eigenvalues_coincide(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= kDegeneracyThreshold * scale;
}

double divided_difference(const ScalarFunction &f, double x, double y) {
    if (eigenvalues_coincide(x, y)) {
        return f.d1(0.5 * (x + y));
    }
    return (f(x) - f(y)) / (x - y);
}

double divided_difference(const ScalarFunction &f, double x, double y,
                          double z) {
    std::array<double, 3> v{x, y, z};
    std::sort(v.begin(), v.end());
    // v[0] and v[2] are the farthest apart; if they coincide, all do.
    if (eigenvalues_coincide(v[0], v[2])) {
        return 0.5 * f.d2((v[0] + v[1] + v[2]) / 3.0);
    }
    return (divided_difference(f, v[0], v[1]) -
            divided_difference(f, v[1], v[2])) /
           (v[0] - v[2]);
}

RealMatrix divided_difference_matrix(const ScalarFunction &f,
                                     const RealVector &lambda) {
    const Eigen::Index n = lambda.size();
    RealMatrix k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = f.d1(lambda(i));
        for (Eigen::Index j = i + 1; j < n; ++j) {
            k(i, j) = divided_difference(f, lambda(i), lambda(j));
            k(j, i) = k(i, j);
        }
    }
    return k;
}

// ---------------------------------------------------------------------------
// spectral calculus

Spectrum spectral_decompose(const Matrix &a) {
    require_self_adjoint(a, "spectral_decompose");
    const Matrix h = (a + a.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectral_decompose: eigensolver failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Spectrum spectral_decompose(const HermitianOperator &a) {
    return spectral_decompose(a.matrix());
}

HermitianOperator reconstruct(const Spectrum &spec) {
    return HermitianOperator::symmetrized(spec.from_eigenbasis(
        spec.eigenvalues.cast<Complex>().asDiagonal().toDenseMatrix()));
}

HermitianOperator apply_scalar_function(const Spectrum &spec,
                                        const ScalarFunction &f) {
    const Eigen::Index n = spec.dim();
    RealVector fl(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        fl(i) = f(spec.eigenvalues(i));
    }
    return HermitianOperator::symmetrized(spec.unitary *
                                          fl.cast<Complex>().asDiagonal() *
                                          spec.unitary.adjoint());
}

Matrix apply_entrywise_kernel(const Spectrum &spec, const RealMatrix &kernel,
                              const Matrix &m) {
    if (m.rows() != spec.dim() || m.cols() != spec.dim() ||
        kernel.rows() != spec.dim() || kernel.cols() != spec.dim()) {
        throw DimensionMismatch("apply_entrywise_kernel: dimension mismatch");
    }
    const Matrix in_basis = spec.to_eigenbasis(m);
    return spec.from_eigenbasis(in_basis.cwiseProduct(kernel.cast<Complex>()));
}

HermitianOperator frechet_derivative(const Spectrum &spec,
                                     const HermitianOperator &d,
                                     const ScalarFunction &f) {
    const RealMatrix k = divided_difference_matrix(f, spec.eigenvalues);
    return HermitianOperator::symmetrized(
        apply_entrywise_kernel(spec, k, d.matrix()));
}

HermitianOperator second_frechet_derivative(const Spectrum &spec,
                                            const HermitianOperator &e,
                                            const HermitianOperator &f_dir,
                                            const ScalarFunction &f) {
    const Eigen::Index n = spec.dim();
    if (e.dim() != n || f_dir.dim() != n) {
        throw DimensionMismatch("second_frechet_derivative: dimension mismatch");
    }
    const Matrix ee = spec.to_eigenbasis(e.matrix());
    const Matrix fe = spec.to_eigenbasis(f_dir.matrix());
    const RealVector &l = spec.eigenvalues;
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a; b < n; ++b) {
            Complex acc = 0.0;
            for (Eigen::Index c = 0; c < n; ++c) {
                const double dd = divided_difference(f, l(a), l(c), l(b));
                acc += dd * (ee(a, c) * fe(c, b) + fe(a, c) * ee(c, b));
            }
            out(a, b) = acc;
            out(b, a) = std::conj(acc);
        }
    }
    return HermitianOperator::symmetrized(spec.from_eigenbasis(out));
}

// ---------------------------------------------------------------------------
// inner products and the commutant decomposition

Complex hs_inner(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << "hs_inner: dimension mismatch (" << a.rows() << "x" << a.cols()
            << " vs " << b.rows() << "x" << b.cols() << ")";
        throw DimensionMismatch(msg.str());
    }
    // Tr(A^dagger B) = sum_ij conj(A_ij) B_ij
    return a.conjugate().cwiseProduct(b).sum();
}

double hs_inner(const HermitianOperator &a, const HermitianOperator &b) {
    return hs_inner(a.matrix(), b.matrix()).real();
}

Matrix commutator(const Matrix &a, const Matrix &b) { return a * b - b * a; }

CommutantSplit commutant_split(const Spectrum &sigma,
                               const HermitianOperator &d) {
    const Eigen::Index n = sigma.dim();
    if (d.dim() != n) {
        throw DimensionMismatch("commutant_split: dimension mismatch");
    }
    const Matrix de = sigma.to_eigenbasis(d.matrix());
    const RealVector &l = sigma.eigenvalues;
    Matrix c = Matrix::Zero(n, n);
    Matrix delta = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (eigenvalues_coincide(l(i), l(j))) {
                c(i, j) = de(i, j);
            } else {
                delta(i, j) = de(i, j) / (l(i) - l(j));
            }
        }
    }
    Matrix delta_std = sigma.from_eigenbasis(delta);
    delta_std = (delta_std - delta_std.adjoint()) * 0.5;
    return {HermitianOperator::symmetrized(sigma.from_eigenbasis(c)),
            std::move(delta_std)};
}

} // namespace qig
