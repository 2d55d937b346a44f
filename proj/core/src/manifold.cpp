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

#include "qig/manifold.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "qig/error.hpp"

namespace qig {

namespace {

void require_alpha_closed(double alpha, const char *where) {
    if (!(alpha >= -1.0 && alpha <= 1.0)) {
        std::ostringstream msg;
        msg << where << ": alpha = " << alpha << " outside [-1, 1]";
        throw ParameterError(msg.str());
    }
}

std::string format_theta(const RealVector &theta) {
    std::ostringstream out;
    out.precision(17);
    out << "(";
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        out << (i ? ", " : "") << theta(i);
    }
    out << ")";
    return out.str();
}

} // namespace

// ---------------------------------------------------------------------------
// points and tangent vectors

WeightMatrix::WeightMatrix(HermitianOperator m)
    : m_(std::move(m)), spec_(spectral_decompose(m_)) {
    if (!(spec_.min() > 0.0)) {
        std::ostringstream msg;
        msg << "WeightMatrix: matrix is not positive definite (minimum "
               "eigenvalue "
            << spec_.min() << ")";
        throw NotPositiveDefinite(msg.str(), spec_.min());
    }
}

bool WeightMatrix::has_unit_trace() const {
    return std::abs(trace() - 1.0) <= kTraceTolerance;
}

HermitianOperator WeightMatrix::power(double exponent) const {
    if (exponent == 0.0) {
        return HermitianOperator::identity(dim());
    }
    if (exponent == 1.0) {
        return m_;
    }
    return apply_scalar_function(spec_, fn::power(exponent));
}

StateMatrix::StateMatrix(HermitianOperator m)
    : StateMatrix(WeightMatrix(std::move(m))) {}

StateMatrix::StateMatrix(WeightMatrix w) : WeightMatrix(std::move(w)) {
    if (!has_unit_trace()) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "StateMatrix: trace " << trace() << " differs from 1 by more than "
            << kTraceTolerance;
        throw ParameterError(msg.str());
    }
}

StateMatrix StateMatrix::maximally_mixed(Eigen::Index n) {
    return StateMatrix(HermitianOperator::identity(n) *
                       (1.0 / static_cast<double>(n)));
}

TangentVector::TangentVector(WeightMatrix base, HermitianOperator mixture)
    : base_(std::move(base)), mixture_(std::move(mixture)), on_states_(false) {
    if (mixture_.dim() != base_.dim()) {
        throw DimensionMismatch("TangentVector: dimension mismatch");
    }
}

TangentVector::TangentVector(const StateMatrix &base, HermitianOperator mixture)
    : base_(base), mixture_(std::move(mixture)), on_states_(true) {
    if (mixture_.dim() != base_.dim()) {
        throw DimensionMismatch("TangentVector: dimension mismatch");
    }
    if (std::abs(mixture_.trace()) > kTraceTolerance) {
        std::ostringstream msg;
        msg << "TangentVector: vector tangent to the states must be traceless "
               "(trace "
            << mixture_.trace() << ")";
        throw ParameterError(msg.str());
    }
}

bool same_base(const WeightMatrix &a, const WeightMatrix &b, double tol) {
    return a.dim() == b.dim() &&
           (a.matrix().matrix() - b.matrix().matrix()).norm() <= tol;
}

// ---------------------------------------------------------------------------
// embeddings

ScalarFunction embedding_function(double alpha) {
    require_alpha_closed(alpha, "embedding_function");
    if (alpha == -1.0) {
        return fn::identity();
    }
    if (alpha == 1.0) {
        return fn::log();
    }
    const double c = 2.0 / (1.0 - alpha);
    const double q = (1.0 - alpha) / 2.0;
    std::ostringstream name;
    name << "l_" << alpha;
    return {name.str(), [c, q](double x) { return c * std::pow(x, q); },
            [q](double x) { return std::pow(x, q - 1.0); },
            [q](double x) { return (q - 1.0) * std::pow(x, q - 2.0); }, 0.0};
}

ScalarFunction inverse_embedding_function(double alpha) {
    require_alpha_closed(alpha, "inverse_embedding_function");
    if (alpha == -1.0) {
        return fn::identity();
    }
    if (alpha == 1.0) {
        return fn::exp();
    }
    // y = c x^q  <=>  x = (q y)^(1/q), since c = 1/q
    const double q = (1.0 - alpha) / 2.0;
    const double e = 1.0 / q;
    std::ostringstream name;
    name << "l_" << alpha << "^-1";
    return {name.str(), [q, e](double y) { return std::pow(q * y, e); },
            [q, e](double y) { return std::pow(q * y, e - 1.0); },
            [q, e](double y) { return (e - 1.0) * q * std::pow(q * y, e - 2.0); },
            0.0};
}

RealMatrix embedding_kernel(const Spectrum &spec, double alpha) {
    return divided_difference_matrix(embedding_function(alpha),
                                     spec.eigenvalues);
}

HermitianOperator alpha_embed(const WeightMatrix &sigma, double alpha) {
    if (!(alpha > -1.0 && alpha < 1.0)) {
        std::ostringstream msg;
        msg << "alpha_embed: alpha = " << alpha
            << " must lie strictly inside (-1, 1); use embedding() for the "
               "log / identity limits";
        throw ParameterError(msg.str());
    }
    return embedding(sigma, alpha);
}

HermitianOperator embedding(const WeightMatrix &sigma, double alpha) {
    if (alpha == -1.0) {
        return sigma.matrix();
    }
    return apply_scalar_function(sigma.spectrum(), embedding_function(alpha));
}

HermitianOperator alpha_representation(const TangentVector &v, double alpha) {
    require_alpha_closed(alpha, "alpha_representation");
    if (alpha == -1.0) {
        return v.mixture_rep();
    }
    return frechet_derivative(v.base().spectrum(), v.mixture_rep(),
                              embedding_function(alpha));
}

HermitianOperator representation_convert(const WeightMatrix &base,
                                         const HermitianOperator &w,
                                         double from_alpha, double to_alpha) {
    require_alpha_closed(from_alpha, "representation_convert");
    require_alpha_closed(to_alpha, "representation_convert");
    if (w.dim() != base.dim()) {
        throw DimensionMismatch("representation_convert: dimension mismatch");
    }
    if (from_alpha == to_alpha) {
        return w;
    }
    const Spectrum &spec = base.spectrum();
    const RealMatrix ratio =
        embedding_kernel(spec, to_alpha)
            .cwiseQuotient(embedding_kernel(spec, from_alpha));
    return HermitianOperator::symmetrized(
        apply_entrywise_kernel(spec, ratio, w.matrix()));
}

TangentVector from_alpha_representation(const WeightMatrix &base,
                                        const HermitianOperator &w,
                                        double alpha) {
    return {base, representation_convert(base, w, alpha, -1.0)};
}

TangentVector from_alpha_representation(const StateMatrix &base,
                                        const HermitianOperator &w,
                                        double alpha) {
    return {base, representation_convert(base, w, alpha, -1.0)};
}

double tangency_residual(const WeightMatrix &rho, double alpha,
                         const HermitianOperator &a) {
    require_alpha_closed(alpha, "tangency_residual");
    return std::abs(hs_inner(rho.power((1.0 + alpha) / 2.0), a));
}

HermitianOperator sphere_project(const StateMatrix &rho, double alpha,
                                 const HermitianOperator &a) {
    require_alpha_closed(alpha, "sphere_project");
    const double radial = hs_inner(rho.power((1.0 + alpha) / 2.0), a);
    return a - radial * rho.power((1.0 - alpha) / 2.0);
}

double schatten_norm(const HermitianOperator &a, double r) {
    if (!(r >= 1.0)) {
        throw ParameterError("schatten_norm: r must be >= 1");
    }
    const Spectrum spec = spectral_decompose(a);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < spec.dim(); ++i) {
        acc += std::pow(std::abs(spec.eigenvalues(i)), r);
    }
    return std::pow(acc, 1.0 / r);
}

// ---------------------------------------------------------------------------
// parametrized families

ParametrizedFamily::ParametrizedFamily(std::string name, int param_dim,
                                       Chart chart, bool unit_trace)
    : name_(std::move(name)), dim_(param_dim), chart_(std::move(chart)),
      unit_trace_(unit_trace) {
    if (param_dim < 1) {
        throw ParameterError("ParametrizedFamily: param_dim must be >= 1");
    }
}

ParametrizedFamily
ParametrizedFamily::with_analytic_derivatives(FirstDerivative first,
                                              SecondDerivative second) const {
    ParametrizedFamily copy = *this;
    copy.first_ = std::move(first);
    copy.second_ = std::move(second);
    return copy;
}

ParametrizedFamily ParametrizedFamily::with_central_differences() const {
    ParametrizedFamily copy = *this;
    copy.first_ = nullptr;
    copy.second_ = nullptr;
    return copy;
}

void ParametrizedFamily::check_index(const RealVector &theta, int i) const {
    if (theta.size() != dim_) {
        std::ostringstream msg;
        msg << "family '" << name_ << "': expected " << dim_
            << " parameters, got " << theta.size();
        throw DimensionMismatch(msg.str());
    }
    if (i < 0 || i >= dim_) {
        std::ostringstream msg;
        msg << "family '" << name_ << "': index " << i << " out of range";
        throw ParameterError(msg.str());
    }
}

HermitianOperator
ParametrizedFamily::chart_matrix(const RealVector &theta) const {
    if (theta.size() != dim_) {
        std::ostringstream msg;
        msg << "family '" << name_ << "': expected " << dim_
            << " parameters, got " << theta.size();
        throw DimensionMismatch(msg.str());
    }
    try {
        return HermitianOperator(chart_(theta));
    } catch (const std::exception &e) {
        throw ChartError("family '" + name_ +
                         "': chart evaluation failed at theta=" +
                         format_theta(theta) + ": " + e.what());
    }
}

WeightMatrix ParametrizedFamily::point(const RealVector &theta) const {
    HermitianOperator m = chart_matrix(theta);
    try {
        WeightMatrix w(std::move(m));
        if (w.min_eigenvalue() < kChartSpectralFloor) {
            std::ostringstream msg;
            msg << "minimum eigenvalue " << w.min_eigenvalue()
                << " below the chart floor " << kChartSpectralFloor;
            throw NotPositiveDefinite(msg.str(), w.min_eigenvalue());
        }
        return w;
    } catch (const NotPositiveDefinite &e) {
        throw ChartError("family '" + name_ + "': invalid point at theta=" +
                         format_theta(theta) + ": " + e.what());
    }
}

StateMatrix ParametrizedFamily::state(const RealVector &theta) const {
    try {
        return StateMatrix(point(theta));
    } catch (const ParameterError &e) {
        throw ChartError("family '" + name_ + "': not a state at theta=" +
                         format_theta(theta) + ": " + e.what());
    }
}

double first_derivative_step(double theta_i) {
    return 1e-4 * std::max(1.0, std::abs(theta_i));
}

HermitianOperator ParametrizedFamily::first_derivative(const RealVector &theta,
                                                       int i) const {
    check_index(theta, i);
    if (first_) {
        try {
            return HermitianOperator(first_(theta, i));
        } catch (const SymmetryViolation &) {
            throw;
        } catch (const std::exception &e) {
            throw ChartError("family '" + name_ +
                             "': derivative evaluation failed at theta=" +
                             format_theta(theta) + ": " + e.what());
        }
    }
    const double h = first_derivative_step(theta(i));
    RealVector plus = theta;
    RealVector minus = theta;
    plus(i) += h;
    minus(i) -= h;
    return (chart_matrix(plus) - chart_matrix(minus)) * (0.5 / h);
}

HermitianOperator ParametrizedFamily::second_derivative(const RealVector &theta,
                                                        int i, int j) const {
    check_index(theta, i);
    check_index(theta, j);
    if (!second_) {
        throw ParameterError("family '" + name_ +
                             "' has no analytic second derivative");
    }
    try {
        return HermitianOperator(second_(theta, i, j));
    } catch (const std::exception &e) {
        throw ChartError("family '" + name_ +
                         "': second derivative failed at theta=" +
                         format_theta(theta) + ": " + e.what());
    }
}

TangentVector family_tangent(const ParametrizedFamily &family,
                             const RealVector &theta, int i) {
    HermitianOperator d = family.first_derivative(theta, i);
    if (family.unit_trace()) {
        return {family.state(theta), std::move(d)};
    }
    return {family.point(theta), std::move(d)};
}

// ---------------------------------------------------------------------------
// affine coordinates

std::vector<HermitianOperator> hermitian_basis(Eigen::Index n) {
    std::vector<HermitianOperator> basis;
    basis.reserve(static_cast<std::size_t>(n * n));
    basis.push_back(HermitianOperator::identity(n));
    const Complex i_unit{0.0, 1.0};
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            Matrix sym = Matrix::Zero(n, n);
            sym(j, k) = 1.0;
            sym(k, j) = 1.0;
            basis.push_back(HermitianOperator(sym));
            Matrix anti = Matrix::Zero(n, n);
            anti(j, k) = -i_unit;
            anti(k, j) = i_unit;
            basis.push_back(HermitianOperator(anti));
        }
    }
    for (Eigen::Index l = 1; l < n; ++l) {
        const double s =
            std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
        RealVector d = RealVector::Zero(n);
        for (Eigen::Index j = 0; j < l; ++j) {
            d(j) = s;
        }
        d(l) = -static_cast<double>(l) * s;
        basis.push_back(HermitianOperator::diagonal(d));
    }
    return basis;
}

namespace {

RealMatrix gram_matrix(const std::vector<HermitianOperator> &basis,
                       Eigen::Index n) {
    const auto k = static_cast<Eigen::Index>(basis.size());
    if (k != n * n) {
        std::ostringstream msg;
        msg << "affine coordinates need a basis of " << n * n
            << " self-adjoint matrices, got " << k;
        throw ParameterError(msg.str());
    }
    RealMatrix g(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        if (basis[a].dim() != n) {
            throw DimensionMismatch("affine coordinates: basis dimension");
        }
        for (Eigen::Index b = a; b < k; ++b) {
            g(a, b) = hs_inner(basis[a], basis[b]);
            g(b, a) = g(a, b);
        }
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(k - 1);
    if (!(lo > 1e-12 * std::max(1.0, hi))) {
        std::ostringstream msg;
        msg << "affine coordinates: basis Gram matrix is singular (eigenvalue "
            << lo << ")";
        throw ParameterError(msg.str());
    }
    return g;
}

Matrix combine(const RealVector &xi,
               const std::vector<HermitianOperator> &basis) {
    if (xi.size() != static_cast<Eigen::Index>(basis.size()) || basis.empty()) {
        throw DimensionMismatch("affine coordinates: size mismatch");
    }
    Matrix l = Matrix::Zero(basis[0].dim(), basis[0].dim());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        l += xi(static_cast<Eigen::Index>(i)) * basis[i].matrix();
    }
    return l;
}

} // namespace

RealVector affine_coordinates(const WeightMatrix &sigma, double alpha,
                              const std::vector<HermitianOperator> &basis) {
    const RealMatrix g = gram_matrix(basis, sigma.dim());
    const HermitianOperator l = embedding(sigma, alpha);
    RealVector rhs(g.rows());
    for (Eigen::Index a = 0; a < g.rows(); ++a) {
        rhs(a) = hs_inner(basis[static_cast<std::size_t>(a)], l);
    }
    return g.ldlt().solve(rhs);
}

WeightMatrix affine_point(const RealVector &xi, double alpha,
                          const std::vector<HermitianOperator> &basis) {
    const HermitianOperator l = HermitianOperator::symmetrized(combine(xi, basis));
    return WeightMatrix(apply_scalar_function(spectral_decompose(l),
                                              inverse_embedding_function(alpha)));
}

ParametrizedFamily affine_family(double alpha,
                                 std::vector<HermitianOperator> basis) {
    require_alpha_closed(alpha, "affine_family");
    if (basis.empty()) {
        throw ParameterError("affine_family: empty basis");
    }
    const auto n = basis[0].dim();
    (void)gram_matrix(basis, n);
    std::ostringstream name;
    name << "affine(alpha=" << alpha << ", N=" << n << ")";
    const int d = static_cast<int>(basis.size());
    auto shared = std::make_shared<const std::vector<HermitianOperator>>(
        std::move(basis));
    const ScalarFunction inv = inverse_embedding_function(alpha);

    ParametrizedFamily::Chart chart = [shared, alpha](const RealVector &xi) {
        return affine_point(xi, alpha, *shared).matrix().matrix();
    };
    ParametrizedFamily::FirstDerivative first =
        [shared, inv](const RealVector &xi, int i) {
            const Spectrum spec = spectral_decompose(
                HermitianOperator::symmetrized(combine(xi, *shared)));
            return frechet_derivative(spec, (*shared)[static_cast<std::size_t>(i)],
                                      inv)
                .matrix();
        };
    ParametrizedFamily::SecondDerivative second =
        [shared, inv](const RealVector &xi, int i, int j) {
            const Spectrum spec = spectral_decompose(
                HermitianOperator::symmetrized(combine(xi, *shared)));
            return second_frechet_derivative(
                       spec, (*shared)[static_cast<std::size_t>(i)],
                       (*shared)[static_cast<std::size_t>(j)], inv)
                .matrix();
        };
    return ParametrizedFamily(name.str(), d, std::move(chart), false)
        .with_analytic_derivatives(std::move(first), std::move(second));
}

} // namespace qig
