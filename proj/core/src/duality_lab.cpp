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

#include "qig/duality_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "qig/error.hpp"
#include "qig/families.hpp"
#include "qig/random.hpp"

namespace qig {

const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::dual:
        return "dual";
    case Verdict::not_dual:
        return "not_dual";
    case Verdict::inconclusive:
        break;
    }
    return "inconclusive";
}

Verdict classify(double value, double tol, double gap) {
    if (value <= tol) {
        return Verdict::dual;
    }
    if (value >= gap) {
        return Verdict::not_dual;
    }
    return Verdict::inconclusive;
}

namespace {

// Fourth-order central difference weights at offsets -2, -1, 1, 2.
constexpr std::array<double, 4> kD1Offsets{-2.0, -1.0, 1.0, 2.0};
constexpr std::array<double, 4> kD1Weights{1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0,
                                           -1.0 / 12.0};

double metric_step(double theta_i) {
    return 1e-3 * std::max(1.0, std::abs(theta_i));
}

RealVector shifted(const RealVector &theta, int i, double by) {
    RealVector t = theta;
    t(i) += by;
    return t;
}

std::vector<Matrix> tangents(const ParametrizedFamily &family,
                             const RealVector &theta) {
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(family.param_dim()));
    for (int j = 0; j < family.param_dim(); ++j) {
        out.push_back(family.first_derivative(theta, j).matrix());
    }
    return out;
}

RealMatrix metric_matrix_at(const ParametrizedFamily &family,
                            const RealVector &theta,
                            const MonotoneFunctionSpec &f, double scale) {
    const MetricKernel k = petz_kernel(family.point(theta), f);
    const auto t = tangents(family, theta);
    const int d = family.param_dim();
    RealMatrix g(d, d);
    for (int j = 0; j < d; ++j) {
        for (int l = j; l < d; ++l) {
            g(j, l) = scale * metric_eval(k, t[static_cast<std::size_t>(j)],
                                          t[static_cast<std::size_t>(l)]);
            g(l, j) = g(j, l);
        }
    }
    return g;
}

} // namespace

double DualityReport::per_triple(int i, int j, int k) const {
    return per_triple_defects.at(
        static_cast<std::size_t>((i * param_dim + j) * param_dim + k));
}

DualityReport duality_defect(const ParametrizedFamily &family,
                             const std::vector<RealVector> &grid,
                             const MonotoneFunctionSpec &f, double alpha,
                             ManifoldKind kind, double metric_scale) {
    if (grid.empty()) {
        throw ParameterError("duality_defect: empty grid");
    }
    if (kind == ManifoldKind::states && !family.unit_trace()) {
        throw ParameterError("duality_defect: family '" + family.name() +
                             "' is not a family of states");
    }
    const int d = family.param_dim();
    const auto du = static_cast<std::size_t>(d);
    DualityReport report;
    report.metric_name = f.name;
    report.alpha = alpha;
    report.kind = kind;
    report.metric_scale = metric_scale;
    report.param_dim = d;
    report.grid = grid;
    report.per_triple_defects.assign(du * du * du, 0.0);

    for (const RealVector &theta : grid) {
        try {
            const MetricKernel k = petz_kernel(family.point(theta), f);
            const auto t = tangents(family, theta);
            std::vector<Matrix> fwd(du * du);
            std::vector<Matrix> bwd(du * du);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    const auto ij = static_cast<std::size_t>(i * d + j);
                    fwd[ij] = covariant_derivative(kind, family, theta, i, j,
                                                   alpha)
                                  .vector.mixture_rep()
                                  .matrix();
                    bwd[ij] = covariant_derivative(kind, family, theta, i, j,
                                                   -alpha)
                                  .vector.mixture_rep()
                                  .matrix();
                }
            }
            for (int i = 0; i < d; ++i) {
                const double h = metric_step(theta(i));
                RealMatrix dg = RealMatrix::Zero(d, d);
                for (std::size_t s = 0; s < kD1Offsets.size(); ++s) {
                    dg += kD1Weights[s] *
                          metric_matrix_at(family,
                                           shifted(theta, i, kD1Offsets[s] * h),
                                           f, metric_scale);
                }
                dg /= h;
                for (int j = 0; j < d; ++j) {
                    for (int l = 0; l < d; ++l) {
                        const double lhs = dg(j, l);
                        const double rhs =
                            metric_scale *
                            (metric_eval(k, fwd[static_cast<std::size_t>(i * d + j)],
                                         t[static_cast<std::size_t>(l)]) +
                             metric_eval(k, t[static_cast<std::size_t>(j)],
                                         bwd[static_cast<std::size_t>(i * d + l)]));
                        double &slot = report.per_triple_defects
                            [static_cast<std::size_t>((i * d + j) * d + l)];
                        slot = std::max(slot, std::abs(lhs - rhs));
                    }
                }
            }
        } catch (const ChartError &e) {
            throw DiscretizationError(
                std::string("duality_defect: sample leaves the chart: ") +
                e.what());
        }
    }
    report.defect = *std::max_element(report.per_triple_defects.begin(),
                                      report.per_triple_defects.end());
    return report;
}

std::vector<DefectCase> documented_ensemble(std::uint64_t seed,
                                            int grid_size) {
    std::vector<DefectCase> out;
    std::uint64_t stream = 0;
    auto add = [&](ParametrizedFamily fam, ManifoldKind kind) {
        auto grid = seeded_grid(fam.param_dim(), grid_size,
                                split_seed(seed, stream++));
        out.push_back({std::move(fam), std::move(grid), kind});
    };
    add(qubit_state_family(), ManifoldKind::states);
    add(qutrit_state_family(), ManifoldKind::states);
    add(qubit_state_family(), ManifoldKind::extended);
    add(qutrit_state_family(), ManifoldKind::extended);
    add(qubit_weight_family(), ManifoldKind::extended);
    add(qutrit_weight_family(), ManifoldKind::extended);
    return out;
}

DefectCase witness_case(std::uint64_t seed, int grid_size) {
    ParametrizedFamily fam = qubit_state_family();
    auto grid = seeded_grid(fam.param_dim(), grid_size, split_seed(seed, 0));
    return {std::move(fam), std::move(grid), ManifoldKind::states};
}

double ensemble_defect(const std::vector<DefectCase> &cases,
                       const MonotoneFunctionSpec &f, double alpha,
                       double metric_scale) {
    double worst = 0.0;
    for (const auto &c : cases) {
        worst = std::max(worst, duality_defect(c.family, c.grid, f, alpha,
                                               c.kind, metric_scale)
                                    .defect);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// transport

TransportDualityReport transport_duality_check(const CurveSpec &curve,
                                               const MonotoneFunctionSpec &f,
                                               double alpha,
                                               const TangentVector &y,
                                               const TangentVector &z,
                                               ManifoldKind kind,
                                               int sample_count) {
    if (sample_count < 1) {
        throw ParameterError("transport_duality_check: sample_count < 1");
    }
    TransportDualityReport report;
    report.metric_name = f.name;
    report.alpha = alpha;
    report.kind = kind;
    for (int s = 0; s <= sample_count; ++s) {
        const double t = static_cast<double>(s) / sample_count;
        double value = 0.0;
        if (kind == ManifoldKind::extended) {
            const WeightMatrix at = curve.point(t);
            if (s == 0 && !same_base(at, y.base(), 1e-10)) {
                throw ParameterError(
                    "transport_duality_check: Y is not at the curve start");
            }
            const TangentVector ty = flat_transport(at, y, alpha);
            const TangentVector tz = flat_transport(at, z, -alpha);
            value = metric_eval(petz_kernel(at, f), ty.mixture_rep().matrix(),
                                tz.mixture_rep().matrix());
        } else {
            const CurveSpec piece = curve.truncated(t);
            const TangentVector ty =
                parallel_transport_on_M_extrapolated(piece, y, alpha);
            const TangentVector tz =
                parallel_transport_on_M_extrapolated(piece, z, -alpha);
            value = metric_eval(petz_kernel(ty.base(), f),
                                ty.mixture_rep().matrix(),
                                tz.mixture_rep().matrix());
        }
        report.t.push_back(t);
        report.values.push_back(value);
        report.deviation =
            std::max(report.deviation, std::abs(value - report.values.front()));
    }
    return report;
}

CurveSpec documented_transport_curve(ManifoldKind kind) {
    if (kind == ManifoldKind::extended) {
        RealVector a(4);
        RealVector b(4);
        a << -0.1, 0.1, -0.05, 0.1;
        b << 0.12, -0.1, 0.1, -0.08;
        return {qubit_weight_family(), segment_path(a, b), 256};
    }
    RealVector a(3);
    RealVector b(3);
    a << 0.1, -0.1, 0.05;
    b << -0.12, 0.1, -0.1;
    return {qubit_state_family(), segment_path(a, b), 256};
}

std::pair<TangentVector, TangentVector>
documented_transport_vectors(const CurveSpec &curve) {
    if (curve.family.param_dim() < 3) {
        throw ParameterError(
            "documented_transport_vectors: need at least 3 parameters");
    }
    const RealVector start = curve.path(0.0);
    const auto d0 = family_tangent(curve.family, start, 0);
    const auto d1 = family_tangent(curve.family, start, 1);
    const auto d2 = family_tangent(curve.family, start, 2);
    auto make = [&](const HermitianOperator &m) {
        return curve.family.unit_trace()
                   ? TangentVector(StateMatrix(d0.base()), m)
                   : TangentVector(d0.base(), m);
    };
    return {make(d0.mixture_rep() + d1.mixture_rep()),
            make(d1.mixture_rep() + d2.mixture_rep())};
}

// ---------------------------------------------------------------------------
// potentials and dual coordinates

double flatness_residual(const ParametrizedFamily &family,
                         const RealVector &theta, double alpha) {
    const bool analytic =
        family.mode() == ParametrizedFamily::DerivativeMode::analytic &&
        family.has_second_derivative();
    double worst = 0.0;
    for (int i = 0; i < family.param_dim(); ++i) {
        for (int j = i; j < family.param_dim(); ++j) {
            worst = std::max(worst, ext_covariant_derivative(
                                        family, theta, i, j, alpha,
                                        SecondDerivativeScheme::stencil)
                                        .vector.mixture_rep()
                                        .norm());
            if (analytic) {
                worst = std::max(worst, ext_covariant_derivative(
                                            family, theta, i, j, alpha,
                                            SecondDerivativeScheme::analytic)
                                            .vector.mixture_rep()
                                            .norm());
            }
        }
    }
    return worst;
}

double alpha_potential(const ParametrizedFamily &family,
                       const RealVector &theta, double alpha) {
    if (!(alpha > -1.0 && alpha <= 1.0)) {
        throw ParameterError("alpha_potential: alpha must lie in (-1, 1]");
    }
    return 2.0 / (1.0 + alpha) * family.point(theta).trace();
}

namespace {

void require_affine(const ParametrizedFamily &family, const RealVector &theta,
                    double alpha, double *residual_out) {
    const double r = flatness_residual(family, theta, alpha);
    if (residual_out != nullptr) {
        *residual_out = r;
    }
    if (!(r <= kFlatnessTolerance)) {
        std::ostringstream msg;
        msg << "coordinates of family '" << family.name()
            << "' are not affine for alpha=" << alpha
            << " (covariant derivative norm " << r << ")";
        throw ParameterError(msg.str());
    }
}

RealVector fd_gradient(const std::function<double(const RealVector &)> &fn,
                       const RealVector &theta) {
    RealVector g(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        const double h = metric_step(theta(i));
        double acc = 0.0;
        for (std::size_t s = 0; s < kD1Offsets.size(); ++s) {
            acc += kD1Weights[s] *
                   fn(shifted(theta, static_cast<int>(i), kD1Offsets[s] * h));
        }
        g(i) = acc / h;
    }
    return g;
}

RealMatrix fd_hessian(const std::function<double(const RealVector &)> &fn,
                      const RealVector &theta) {
    const auto d = theta.size();
    RealMatrix hess(d, d);
    const double f0 = fn(theta);
    for (Eigen::Index i = 0; i < d; ++i) {
        const int ii = static_cast<int>(i);
        const double hi = metric_step(theta(i));
        hess(i, i) = (-fn(shifted(theta, ii, 2 * hi)) +
                      16 * fn(shifted(theta, ii, hi)) - 30 * f0 +
                      16 * fn(shifted(theta, ii, -hi)) -
                      fn(shifted(theta, ii, -2 * hi))) /
                     (12 * hi * hi);
        for (Eigen::Index j = i + 1; j < d; ++j) {
            const int jj = static_cast<int>(j);
            const double hj = metric_step(theta(j));
            double acc = 0.0;
            for (std::size_t a = 0; a < kD1Offsets.size(); ++a) {
                for (std::size_t b = 0; b < kD1Offsets.size(); ++b) {
                    acc += kD1Weights[a] * kD1Weights[b] *
                           fn(shifted(shifted(theta, ii, kD1Offsets[a] * hi),
                                      jj, kD1Offsets[b] * hj));
                }
            }
            hess(i, j) = hess(j, i) = acc / (hi * hj);
        }
    }
    return hess;
}

// Exact gradient of the potential from the family's first derivatives.
RealVector potential_gradient(const ParametrizedFamily &family,
                              const RealVector &theta, double alpha) {
    RealVector g(family.param_dim());
    for (int i = 0; i < family.param_dim(); ++i) {
        g(i) = 2.0 / (1.0 + alpha) * family.first_derivative(theta, i).trace();
    }
    return g;
}

} // namespace

PotentialReport potential_check(const ParametrizedFamily &family,
                                const RealVector &theta, double alpha,
                                const PotentialOptions &opts) {
    PotentialReport report;
    report.alpha = alpha;
    report.theta = theta;
    require_affine(family, theta, alpha, &report.flatness);

    auto psi = [&](const RealVector &t) {
        return alpha_potential(family, t, alpha);
    };
    report.hessian = fd_hessian(psi, theta);
    report.metric_matrix =
        metric_matrix_at(family, theta, petz::wyd_for_alpha(alpha), 1.0);
    report.residual =
        (report.hessian - report.metric_matrix).cwiseAbs().maxCoeff();

    // eta = grad psi against the (-alpha)-affine coordinates zeta
    const Eigen::Index n = family.point(theta).dim();
    const auto basis = hermitian_basis(n);
    const int m = std::max(opts.regression_points,
                           static_cast<int>(basis.size()) + 3);
    Rng rng(opts.seed);
    RealMatrix design(m, static_cast<Eigen::Index>(basis.size()) + 1);
    RealMatrix eta(m, family.param_dim());
    for (int r = 0; r < m; ++r) {
        RealVector p = theta;
        if (r > 0) {
            for (Eigen::Index k = 0; k < p.size(); ++k) {
                p(k) += rng.uniform(-opts.perturbation, opts.perturbation);
            }
        }
        const RealVector zeta =
            affine_coordinates(family.point(p), -alpha, basis);
        design(r, 0) = 1.0;
        design.row(r).tail(zeta.size()) = zeta.transpose();
        eta.row(r) = fd_gradient(psi, p).transpose();
    }
    const RealMatrix coef = design.colPivHouseholderQr().solve(eta);
    report.regression_residual = (design * coef - eta).cwiseAbs().maxCoeff();
    report.regression_points = m;
    return report;
}

DualCoordinateReport dual_coordinate_check(const ParametrizedFamily &family,
                                           const std::vector<RealVector> &grid,
                                           double alpha) {
    DualCoordinateReport report;
    report.alpha = alpha;
    const int d = family.param_dim();
    const MonotoneFunctionSpec f = petz::wyd_for_alpha(alpha);
    for (const RealVector &theta : grid) {
        require_affine(family, theta, alpha, nullptr);
        const RealMatrix g = metric_matrix_at(family, theta, f, 1.0);

        RealMatrix jac(d, d);
        for (int j = 0; j < d; ++j) {
            const double h = metric_step(theta(j));
            RealVector col = RealVector::Zero(d);
            for (std::size_t s = 0; s < kD1Offsets.size(); ++s) {
                col += kD1Weights[s] *
                       potential_gradient(family,
                                          shifted(theta, j, kD1Offsets[s] * h),
                                          alpha);
            }
            jac.col(j) = col / h;
        }
        report.jacobian_residual = std::max(
            report.jacobian_residual, (jac - g).cwiseAbs().maxCoeff());

        // Phi(eta0) = sup_t (t . eta0 - psi(t)) by Newton from a nearby point.
        const RealVector eta0 = potential_gradient(family, theta, alpha);
        RealVector t = theta + RealVector::Constant(d, 0.01);
        for (int it = 0; it < 50; ++it) {
            const RealVector grad = eta0 - potential_gradient(family, t, alpha);
            const RealMatrix hess = metric_matrix_at(family, t, f, 1.0);
            const RealVector step = hess.ldlt().solve(grad);
            double damp = 1.0;
            while (true) {
                try {
                    (void)family.point(t + damp * step);
                    break;
                } catch (const ChartError &) {
                    damp *= 0.5;
                    if (damp < 1e-6) {
                        throw DiscretizationError(
                            "dual_coordinate_check: Legendre search left the "
                            "chart");
                    }
                }
            }
            t += damp * step;
            if (step.norm() < 1e-14) {
                break;
            }
        }
        const double phi = t.dot(eta0) - alpha_potential(family, t, alpha);
        const double psi0 = alpha_potential(family, theta, alpha);
        report.legendre_residual =
            std::max(report.legendre_residual,
                     std::abs(psi0 + phi - theta.dot(eta0)));
        ++report.points;
    }
    return report;
}

// ---------------------------------------------------------------------------
// uniqueness scan

std::string UniquenessCandidate::label() const {
    if (scale == 1.0) {
        return f.name;
    }
    std::ostringstream out;
    out << scale << "*" << f.name;
    return out.str();
}

std::vector<UniquenessCandidate> default_uniqueness_candidates(double alpha) {
    const MonotoneFunctionSpec ref = petz::wyd_for_alpha(alpha);
    const bool bkm_limit = std::abs(alpha) == 1.0;
    std::vector<UniquenessCandidate> out;
    out.push_back({ref, 1.0, true});
    out.push_back({ref, 3.0, true});
    if (!bkm_limit) {
        out.push_back({petz::bkm(), 1.0, false});
    }
    out.push_back({petz::bures(), 1.0, false});
    out.push_back({petz::rld(), 1.0, false});
    out.push_back({petz::perturbed(ref, 0.1), 1.0, false});
    out.push_back({petz::perturbed(ref, 0.5), 1.0, false});
    return out;
}

UniquenessScanResult uniqueness_scan(
    double alpha, const std::vector<UniquenessCandidate> &candidates,
    const std::vector<DefectCase> &cases) {
    UniquenessScanResult result;
    result.alpha = alpha;
    result.all_as_expected = true;
    double best = std::numeric_limits<double>::infinity();
    bool best_is_reference = false;
    for (const auto &c : candidates) {
        const SpecValidation v = validate_spec(c.f);
        if (!v.ok()) {
            throw ParameterError("uniqueness_scan: candidate '" + c.f.name +
                                 "' violates f(t) = t f(1/t) or f(1) = 1");
        }
        UniquenessEntry e;
        e.name = c.label();
        e.expect_dual = c.expect_dual;
        e.defect = ensemble_defect(cases, c.f, alpha, c.scale);
        e.verdict = classify(e.defect);
        if (e.verdict == Verdict::inconclusive) {
            result.any_inconclusive = true;
        }
        const Verdict expected = c.expect_dual ? Verdict::dual : Verdict::not_dual;
        if (e.verdict != expected) {
            result.all_as_expected = false;
        }
        if (e.defect < best) {
            best = e.defect;
            best_is_reference = c.expect_dual;
        }
        result.entries.push_back(std::move(e));
    }
    result.reference_minimal = best_is_reference;
    return result;
}

// ---------------------------------------------------------------------------
// convexity

double convexity_difference(const ParametrizedFamily &family,
                            const std::vector<RealVector> &grid,
                            double alpha) {
    double worst = 0.0;
    for (const RealVector &theta : grid) {
        for (int i = 0; i < family.param_dim(); ++i) {
            for (int j = i; j < family.param_dim(); ++j) {
                const auto a =
                    covariant_derivative_on_M(family, theta, i, j, alpha);
                const auto b =
                    convex_mixture_derivative(family, theta, i, j, alpha);
                worst = std::max(worst, (a.vector.mixture_rep().matrix() -
                                         b.vector.mixture_rep().matrix())
                                            .norm());
            }
        }
    }
    return worst;
}

ConvexityReport convexity_failure_check(double alpha, std::uint64_t seed,
                                        int grid_size) {
    ConvexityReport report;
    report.alpha = alpha;
    std::vector<DefectCase> generic;
    for (auto &c : documented_ensemble(seed, grid_size)) {
        if (c.kind == ManifoldKind::states) {
            generic.push_back(std::move(c));
        }
    }
    for (const auto &c : generic) {
        report.quantum_difference = std::max(
            report.quantum_difference, convexity_difference(c.family, c.grid, alpha));
    }
    const ParametrizedFamily diag = diagonal_state_family(3);
    report.classical_difference = convexity_difference(
        diag, seeded_grid(diag.param_dim(), grid_size, split_seed(seed, 100)),
        alpha);
    report.bkm_defect = ensemble_defect(generic, petz::bkm(), alpha);
    return report;
}

ClassicalReductionReport classical_reduction_check(std::uint64_t seed,
                                                   int samples) {
    const std::array<double, 3> ps{0.2, 0.5, 0.8};
    const std::array<double, 5> alphas{-0.9, -0.5, 0.0, 0.5, 0.9};
    const auto fs = builtin_functions(ps);
    ClassicalReductionReport report;
    for (int s = 0; s < samples; ++s) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(s)));
        const Eigen::Index n = 2 + s % 3;
        const RealVector p = random_state(rng, n).spectrum().eigenvalues;
        RealVector a(n);
        RealVector b(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            a(k) = rng.normal();
            b(k) = rng.normal();
        }
        a.array() -= a.mean();
        b.array() -= b.mean();
        const StateMatrix rho(HermitianOperator::diagonal(p));
        const TangentVector ta(rho, HermitianOperator::diagonal(a));
        const TangentVector tb(rho, HermitianOperator::diagonal(b));
        const double fisher = (a.array() * b.array() / p.array()).sum();
        const double denom = std::max(1.0, std::abs(fisher));
        for (const auto &f : fs) {
            report.fisher_deviation =
                std::max(report.fisher_deviation,
                         std::abs(metric_eval(rho, f, ta, tb) - fisher) / denom);
        }
        double lo = bkm_direct(rho, ta, tb);
        double hi = lo;
        for (double al : alphas) {
            const double v = wyd_direct(rho, al, ta, tb);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        report.alpha_spread = std::max(report.alpha_spread, (hi - lo) / denom);
        ++report.samples;
    }
    return report;
}

// ---------------------------------------------------------------------------
// flatness, curvature

FlatnessReport flatness_check(double alpha, Eigen::Index n, std::uint64_t seed,
                              int points) {
    FlatnessReport report;
    report.alpha = alpha;
    const auto basis = hermitian_basis(n);
    const ParametrizedFamily fam = affine_family(alpha, basis);
    for (int k = 0; k < points; ++k) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(k)));
        const WeightMatrix w = random_weight(rng, n);
        const RealVector xi = affine_coordinates(w, alpha, basis);
        report.max_residual =
            std::max(report.max_residual, flatness_residual(fam, xi, alpha));
        ++report.points;
    }
    return report;
}

PathDependenceReport path_dependence_witness(double alpha, int step_count) {
    const ParametrizedFamily fam = bloch_family();
    RealVector a(3);
    RealVector b(3);
    RealVector c(3);
    a << 0.5, 0.0, 0.0;
    b << 0.0, 0.5, 0.0;
    c << 0.0, 0.0, 0.5;
    const TangentVector v = family_tangent(fam, a, 2);
    const CurveSpec straight{fam, segment_path(a, b), step_count};
    const CurveSpec detour{fam, polyline_path({a, c, b}), step_count};
    TangentVector s = parallel_transport_on_M_extrapolated(straight, v, alpha);
    TangentVector t = parallel_transport_on_M_extrapolated(detour, v, alpha);
    const double diff =
        (s.mixture_rep().matrix() - t.mixture_rep().matrix()).norm();
    return {alpha, diff, std::move(s), std::move(t)};
}

// ---------------------------------------------------------------------------
// metric cross-checks

KernelDirectReport kernel_direct_equivalence(Eigen::Index n, double alpha,
                                             int trials, std::uint64_t seed) {
    KernelDirectReport report;
    report.n = n;
    report.alpha = alpha;
    const MonotoneFunctionSpec f = petz::wyd_for_alpha(alpha);
    for (int k = 0; k < trials; ++k) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(k)));
        const StateMatrix rho = random_state(rng, n);
        const TangentVector a = random_tangent(rng, rho);
        const TangentVector b = random_tangent(rng, rho);
        const double kernel = metric_eval(rho, f, a, b);
        const double direct = std::abs(alpha) == 1.0
                                  ? bkm_direct(rho, a, b)
                                  : wyd_direct(rho, alpha, a, b);
        report.max_relative_error =
            std::max(report.max_relative_error,
                     std::abs(direct - kernel) / std::abs(kernel));
        ++report.trials;
    }
    return report;
}

MonotonicityCampaignReport monotonicity_campaign(const MonotoneFunctionSpec &f,
                                                 int trials,
                                                 std::uint64_t seed) {
    MonotonicityCampaignReport report;
    report.metric_name = f.name;
    report.min_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < trials; ++k) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(k)));
        const int kind = k % 4;
        Eigen::Index n_in = 0;
        std::optional<KrausChannel> channel;
        if (kind <= 1) {
            n_in = rng.uniform_int(2, 3);
            const Eigen::Index n_out = rng.uniform_int(2, 3);
            int kraus = rng.uniform_int(1, 3);
            while (n_out * kraus < n_in) {
                ++kraus;
            }
            channel = random_channel(rng, n_in, n_out, kraus);
        } else if (kind == 2) {
            n_in = rng.uniform_int(2, 3);
            channel = KrausChannel::depolarizing(n_in, rng.uniform(0.05, 0.95));
        } else {
            n_in = 4;
            channel = KrausChannel::partial_trace_second(2, 2);
        }
        const StateMatrix rho = random_state(rng, n_in);
        const TangentVector a = random_tangent(rng, rho);
        const MonotonicityReport r = monotonicity_check(f, rho, a, *channel);
        if (r.regularized) {
            ++report.regularized;
        }
        if (r.inconclusive) {
            ++report.inconclusive;
        } else {
            report.min_margin = std::min(report.min_margin, r.margin);
        }
        if (kind == 2) {
            ++report.depolarizing_trials;
            if (!r.inconclusive && r.margin > 0.0) {
                ++report.depolarizing_positive;
            }
        }
        ++report.trials;
    }
    return report;
}

// ---------------------------------------------------------------------------
// entropy

GibbsFamily::GibbsFamily(std::vector<HermitianOperator> observables)
    : ys_(std::move(observables)) {
    if (ys_.empty()) {
        throw ParameterError("GibbsFamily: no observables");
    }
    const Eigen::Index n = ys_.front().dim();
    std::vector<HermitianOperator> all{HermitianOperator::identity(n)};
    for (const auto &y : ys_) {
        if (y.dim() != n) {
            throw DimensionMismatch("GibbsFamily: observable sizes differ");
        }
        all.push_back(y);
    }
    const auto m = static_cast<Eigen::Index>(all.size());
    RealMatrix gram(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            gram(i, j) = hs_inner(all[static_cast<std::size_t>(i)],
                                  all[static_cast<std::size_t>(j)]);
        }
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
    if (!(es.eigenvalues()(0) > 1e-10 * es.eigenvalues()(m - 1))) {
        throw ParameterError(
            "GibbsFamily: identity and observables are linearly dependent");
    }
}

namespace {

struct ShiftedExp {
    Spectrum spec; ///< spectrum of H - max(H) I
    double shift = 0.0;
    double z = 0.0; ///< Tr exp(H - shift)
};

ShiftedExp shifted_exp(const std::vector<HermitianOperator> &ys,
                       const RealVector &theta) {
    if (theta.size() != static_cast<Eigen::Index>(ys.size())) {
        throw DimensionMismatch("GibbsFamily: parameter count");
    }
    HermitianOperator h = HermitianOperator::zero(ys.front().dim());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        h += theta(static_cast<Eigen::Index>(i)) * ys[i];
    }
    ShiftedExp out{spectral_decompose(h), 0.0, 0.0};
    out.shift = out.spec.max();
    out.spec.eigenvalues.array() -= out.shift;
    out.z = out.spec.eigenvalues.array().exp().sum();
    return out;
}

Matrix gibbs_derivative(const std::vector<HermitianOperator> &ys,
                        const ShiftedExp &e, const Matrix &sigma, int j) {
    const HermitianOperator &y = ys[static_cast<std::size_t>(j)];
    const double mean = hs_inner(sigma, y.matrix()).real();
    return frechet_derivative(e.spec, y, fn::exp()).matrix() / e.z -
           mean * sigma;
}

} // namespace

double GibbsFamily::log_partition(const RealVector &theta) const {
    const ShiftedExp e = shifted_exp(ys_, theta);
    return e.shift + std::log(e.z);
}

StateMatrix GibbsFamily::state(const RealVector &theta) const {
    const ShiftedExp e = shifted_exp(ys_, theta);
    HermitianOperator s = apply_scalar_function(e.spec, fn::exp());
    s *= 1.0 / e.z;
    return StateMatrix(HermitianOperator::symmetrized(
        s.matrix() / s.matrix().trace().real()));
}

RealVector GibbsFamily::means(const RealVector &theta) const {
    const StateMatrix s = state(theta);
    RealVector m(size());
    for (int i = 0; i < size(); ++i) {
        m(i) = hs_inner(s.matrix(), ys_[static_cast<std::size_t>(i)]);
    }
    return m;
}

RealMatrix GibbsFamily::mean_jacobian(const RealVector &theta) const {
    const ShiftedExp e = shifted_exp(ys_, theta);
    const Matrix sigma = state(theta).matrix().matrix();
    RealMatrix jac(size(), size());
    for (int j = 0; j < size(); ++j) {
        const Matrix dj = gibbs_derivative(ys_, e, sigma, j);
        for (int i = 0; i < size(); ++i) {
            jac(i, j) =
                hs_inner(ys_[static_cast<std::size_t>(i)].matrix(), dj).real();
        }
    }
    return (jac + jac.transpose()) / 2.0;
}

ParametrizedFamily GibbsFamily::family() const {
    auto ys = std::make_shared<const std::vector<HermitianOperator>>(ys_);
    const GibbsFamily self = *this;
    return ParametrizedFamily(
               "gibbs", size(),
               [self](const RealVector &t) {
                   return self.state(t).matrix().matrix();
               },
               true)
        .with_analytic_derivatives([ys, self](const RealVector &t, int j) {
            const ShiftedExp e = shifted_exp(*ys, t);
            return gibbs_derivative(*ys, e, self.state(t).matrix().matrix(), j);
        });
}

EntropyProjectionReport entropy_projection_demo(const StateMatrix &rho,
                                                const GibbsFamily &g,
                                                int max_iterations) {
    if (rho.dim() != g.dim()) {
        throw DimensionMismatch("entropy_projection_demo: dimension mismatch");
    }
    const int m = g.size();
    RealVector target(m);
    for (int i = 0; i < m; ++i) {
        target(i) = hs_inner(rho.matrix(), g.observables()[static_cast<std::size_t>(i)]);
    }
    // S(rho | sigma(theta)) = const - theta . target + Psi(theta)
    auto objective = [&](const RealVector &t) {
        return g.log_partition(t) - t.dot(target);
    };

    EntropyProjectionReport report;
    RealVector theta = RealVector::Zero(m);
    double value = objective(theta);
    for (int it = 0; it < max_iterations; ++it) {
        const RealVector grad = g.means(theta) - target;
        report.gradient_norm = grad.cwiseAbs().maxCoeff();
        if (report.gradient_norm <= 1e-13) {
            report.converged = true;
            break;
        }
        const RealVector step = -g.mean_jacobian(theta).ldlt().solve(grad);
        const double slope = grad.dot(step);
        double damp = 1.0;
        RealVector next = theta + step;
        double next_value = objective(next);
        while (next_value > value + 1e-4 * damp * slope + 1e-15 * std::abs(value) &&
               damp > 1e-8) {
            damp *= 0.5;
            next = theta + damp * step;
            next_value = objective(next);
        }
        theta = next;
        value = next_value;
        report.iterations = it + 1;
        if (damp * step.cwiseAbs().maxCoeff() < 1e-15) {
            break;
        }
    }
    const RealVector final_grad = g.means(theta) - target;
    report.gradient_norm = final_grad.cwiseAbs().maxCoeff();
    report.converged = report.converged || report.gradient_norm <= 1e-10;
    report.theta = theta;
    report.mean_mismatch = report.gradient_norm;

    const StateMatrix sigma = g.state(theta);
    const ParametrizedFamily fam = g.family();
    const TangentVector seg(sigma, rho.matrix() - sigma.matrix());
    const MonotoneFunctionSpec bkm = petz::bkm();
    for (int i = 0; i < m; ++i) {
        const TangentVector ti(sigma, fam.first_derivative(theta, i));
        report.orthogonality = std::max(
            report.orthogonality, std::abs(metric_eval(sigma, bkm, seg, ti)));
    }
    report.divergence = relative_entropy(rho, sigma);
    return report;
}

TaylorReport relative_entropy_taylor_check(const StateMatrix &rho,
                                           const TangentVector &d, double t) {
    if (!same_base(rho, d.base()) || !d.on_states()) {
        throw ParameterError(
            "relative_entropy_taylor_check: D must be tangent to the states "
            "at rho");
    }
    TaylorReport report;
    report.t = t;
    const WeightMatrix plus(rho.matrix() + t * d.mixture_rep());
    const WeightMatrix minus(rho.matrix() - t * d.mixture_rep());
    const double g = bkm_direct(rho, d, d);
    report.divergence = relative_entropy(rho, plus);
    report.quadratic = 0.5 * t * t * g;
    report.abs_error = std::abs(report.divergence - report.quadratic);
    const double sym = (report.divergence + relative_entropy(rho, minus)) / (t * t);
    report.symmetric_relative_error = std::abs(sym - g) / std::abs(g);
    return report;
}

} // namespace qig
