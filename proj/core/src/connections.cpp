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

#include "qig/connections.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qig/error.hpp"

namespace qig {

const char *to_string(ManifoldKind kind) {
    return kind == ManifoldKind::extended ? "extended" : "states";
}

double second_derivative_step(double theta_i) {
    return 1e-3 * std::max(1.0, std::abs(theta_i));
}

namespace {

// Stencil retries with a halved step this many times before giving up.
constexpr int kStencilShrinkAttempts = 4;

HermitianOperator embedded_at(const ParametrizedFamily &family,
                              const RealVector &theta, double alpha) {
    return embedding(family.point(theta), alpha);
}

HermitianOperator stencil_second_derivative(const ParametrizedFamily &family,
                                            const RealVector &theta, int i,
                                            int j, double alpha) {
    double hi = second_derivative_step(theta(i));
    double hj = second_derivative_step(theta(j));
    for (int attempt = 0; attempt <= kStencilShrinkAttempts; ++attempt) {
        try {
            if (i == j) {
                RealVector plus = theta;
                RealVector minus = theta;
                plus(i) += hi;
                minus(i) -= hi;
                return (embedded_at(family, plus, alpha) -
                        2.0 * embedded_at(family, theta, alpha) +
                        embedded_at(family, minus, alpha)) *
                       (1.0 / (hi * hi));
            }
            auto at = [&](double si, double sj) {
                RealVector p = theta;
                p(i) += si * hi;
                p(j) += sj * hj;
                return embedded_at(family, p, alpha);
            };
            return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) *
                   (1.0 / (4.0 * hi * hj));
        } catch (const ChartError &e) {
            if (attempt == kStencilShrinkAttempts) {
                throw DiscretizationError(
                    std::string("second-derivative stencil leaves the chart "
                                "domain: ") +
                    e.what());
            }
            hi *= 0.5;
            hj *= 0.5;
        }
    }
    throw DiscretizationError("unreachable");
}

} // namespace

HermitianOperator embedded_second_derivative(const ParametrizedFamily &family,
                                             const RealVector &theta, int i,
                                             int j, double alpha,
                                             SecondDerivativeScheme scheme) {
    const bool analytic_available =
        family.mode() == ParametrizedFamily::DerivativeMode::analytic &&
        family.has_second_derivative();
    if (scheme == SecondDerivativeScheme::analytic && !analytic_available) {
        throw ParameterError("family '" + family.name() +
                             "' has no analytic second derivative");
    }
    const bool use_analytic =
        scheme == SecondDerivativeScheme::analytic ||
        (scheme == SecondDerivativeScheme::automatic && analytic_available);
    if (!use_analytic) {
        if (theta.size() != family.param_dim() || i < 0 || j < 0 ||
            i >= family.param_dim() || j >= family.param_dim()) {
            throw ParameterError("embedded_second_derivative: bad index");
        }
        return stencil_second_derivative(family, theta, i, j, alpha);
    }
    // chain rule: D^2 l[d_i sigma, d_j sigma] + D l[d_ij sigma]
    const WeightMatrix sigma = family.point(theta);
    const ScalarFunction ell = embedding_function(alpha);
    const HermitianOperator di = family.first_derivative(theta, i);
    const HermitianOperator dj = family.first_derivative(theta, j);
    const HermitianOperator dij = family.second_derivative(theta, i, j);
    return second_frechet_derivative(sigma.spectrum(), di, dj, ell) +
           frechet_derivative(sigma.spectrum(), dij, ell);
}

CovariantDerivativeResult ext_covariant_derivative(
    const ParametrizedFamily &family, const RealVector &theta, int i, int j,
    double alpha, SecondDerivativeScheme scheme) {
    WeightMatrix sigma = family.point(theta);
    HermitianOperator rep =
        embedded_second_derivative(family, theta, i, j, alpha, scheme);
    TangentVector v = from_alpha_representation(sigma, rep, alpha);
    return {std::move(sigma), std::move(v), std::move(rep)};
}

CovariantDerivativeResult covariant_derivative_on_M(
    const ParametrizedFamily &family, const RealVector &theta, int i, int j,
    double alpha, SecondDerivativeScheme scheme) {
    if (!family.unit_trace()) {
        throw ParameterError("covariant_derivative_on_M: family '" +
                             family.name() + "' is not a family of states");
    }
    const StateMatrix rho = family.state(theta);
    HermitianOperator rep = sphere_project(
        rho, alpha,
        embedded_second_derivative(family, theta, i, j, alpha, scheme));
    TangentVector v = from_alpha_representation(rho, rep, alpha);
    return {rho, std::move(v), std::move(rep)};
}

CovariantDerivativeResult covariant_derivative(ManifoldKind kind,
                                               const ParametrizedFamily &family,
                                               const RealVector &theta, int i,
                                               int j, double alpha,
                                               SecondDerivativeScheme scheme) {
    return kind == ManifoldKind::extended
               ? ext_covariant_derivative(family, theta, i, j, alpha, scheme)
               : covariant_derivative_on_M(family, theta, i, j, alpha, scheme);
}

CovariantDerivativeResult convex_mixture_derivative(
    const ParametrizedFamily &family, const RealVector &theta, int i, int j,
    double alpha, SecondDerivativeScheme scheme) {
    if (!(alpha >= -1.0 && alpha <= 1.0)) {
        throw ParameterError("convex_mixture_derivative: alpha outside [-1, 1]");
    }
    const auto e = covariant_derivative_on_M(family, theta, i, j, 1.0, scheme);
    const auto m = covariant_derivative_on_M(family, theta, i, j, -1.0, scheme);
    const StateMatrix rho = family.state(theta);
    HermitianOperator mixture = ((1.0 + alpha) / 2.0) * e.vector.mixture_rep() +
                                ((1.0 - alpha) / 2.0) * m.vector.mixture_rep();
    HermitianOperator rep = representation_convert(rho, mixture, -1.0, alpha);
    TangentVector v(rho, std::move(mixture));
    return {rho, std::move(v), std::move(rep)};
}

// ---------------------------------------------------------------------------
// curves

WeightMatrix CurveSpec::point(double t) const { return family.point(path(t)); }

StateMatrix CurveSpec::state(double t) const { return family.state(path(t)); }

CurveSpec CurveSpec::truncated(double t_end) const {
    CurveSpec out = *this;
    out.path = [p = path, t_end](double s) { return p(s * t_end); };
    return out;
}

double CurveSpec::max_step_jump() const {
    if (step_count < 1) {
        throw ParameterError("CurveSpec: step_count must be >= 1");
    }
    double worst = 0.0;
    Matrix prev = family.chart_matrix(path(0.0)).matrix();
    for (int k = 1; k <= step_count; ++k) {
        Matrix next = family.chart_matrix(path(static_cast<double>(k) /
                                               step_count))
                          .matrix();
        worst = std::max(worst, (next - prev).norm());
        prev = std::move(next);
    }
    return worst;
}

std::function<RealVector(double)> segment_path(RealVector from, RealVector to) {
    if (from.size() != to.size()) {
        throw DimensionMismatch("segment_path: endpoint sizes differ");
    }
    return [from = std::move(from), to = std::move(to)](double t) {
        return RealVector(from + t * (to - from));
    };
}

std::function<RealVector(double)> polyline_path(std::vector<RealVector> points) {
    if (points.size() < 2) {
        throw ParameterError("polyline_path: need at least two points");
    }
    return [pts = std::move(points)](double t) {
        const double segments = static_cast<double>(pts.size() - 1);
        const double s = std::clamp(t, 0.0, 1.0) * segments;
        auto k = static_cast<std::size_t>(std::floor(s));
        if (k >= pts.size() - 1) {
            k = pts.size() - 2;
        }
        const double u = s - static_cast<double>(k);
        return RealVector(pts[k] + u * (pts[k + 1] - pts[k]));
    };
}

// ---------------------------------------------------------------------------
// transport

namespace {

void require_start(const CurveSpec &curve, const TangentVector &v,
                   const char *where) {
    if (!same_base(curve.point(0.0), v.base(), 1e-10)) {
        throw ParameterError(std::string(where) +
                             ": vector is not based at the curve start");
    }
}

} // namespace

TangentVector flat_transport(const WeightMatrix &to, const TangentVector &v,
                             double alpha) {
    return from_alpha_representation(to, alpha_representation(v, alpha), alpha);
}

TangentVector parallel_transport_ext(const CurveSpec &curve,
                                     const TangentVector &v, double alpha) {
    require_start(curve, v, "parallel_transport_ext");
    return flat_transport(curve.point(1.0), v, alpha);
}

TangentVector parallel_transport_on_M(const CurveSpec &curve,
                                      const TangentVector &v, double alpha) {
    require_start(curve, v, "parallel_transport_on_M");
    if (!v.on_states() || !curve.family.unit_trace()) {
        throw ParameterError(
            "parallel_transport_on_M: needs a state family and a vector "
            "tangent to the states");
    }
    const double jump = curve.max_step_jump();
    if (jump > kMaxCurveJump) {
        std::ostringstream msg;
        msg << "parallel_transport_on_M: step_count " << curve.step_count
            << " too small (consecutive points differ by " << jump
            << " > " << kMaxCurveJump << ")";
        throw DiscretizationError(msg.str());
    }
    HermitianOperator rep = alpha_representation(v, alpha);
    const int n = curve.step_count;
    for (int k = 1; k <= n; ++k) {
        const StateMatrix rho = curve.state(static_cast<double>(k) / n);
        rep = sphere_project(rho, alpha, rep);
    }
    return from_alpha_representation(curve.state(1.0), rep, alpha);
}

TangentVector parallel_transport_on_M_extrapolated(const CurveSpec &curve,
                                                   const TangentVector &v,
                                                   double alpha) {
    if (curve.step_count < 2 || curve.step_count % 2 != 0) {
        throw ParameterError(
            "parallel_transport_on_M_extrapolated: step_count must be even");
    }
    CurveSpec coarse = curve;
    coarse.step_count = curve.step_count / 2;
    const TangentVector fine_result = parallel_transport_on_M(curve, v, alpha);
    const TangentVector coarse_result = parallel_transport_on_M(coarse, v, alpha);
    return {curve.state(1.0), 2.0 * fine_result.mixture_rep() -
                                  coarse_result.mixture_rep()};
}

TangentVector parallel_transport(ManifoldKind kind, const CurveSpec &curve,
                                 const TangentVector &v, double alpha) {
    return kind == ManifoldKind::extended
               ? parallel_transport_ext(curve, v, alpha)
               : parallel_transport_on_M_extrapolated(curve, v, alpha);
}

} // namespace qig
