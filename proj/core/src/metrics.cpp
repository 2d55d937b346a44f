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

#include "qig/metrics.hpp"

#include <cmath>
#include <sstream>

#include "qig/error.hpp"

namespace qig {

SpecValidation validate_spec(const MonotoneFunctionSpec &f) {
    SpecValidation v;
    v.normalization_violation = std::abs(f(1.0) - 1.0);
    for (int k = -6; k <= 6; ++k) {
        const double t = std::ldexp(1.0, k);
        const double lhs = f(t);
        const double rhs = t * f(1.0 / t);
        const double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        v.symmetry_violation = std::max(v.symmetry_violation, rel);
    }
    if (!std::isfinite(v.symmetry_violation)) {
        v.symmetry_violation = std::numeric_limits<double>::infinity();
    }
    return v;
}

namespace petz {

namespace {
// |x - 1| below this switches to the second-order expansion in log x.
constexpr double kSeriesRadius = 1e-6;
} // namespace

MonotoneFunctionSpec wyd(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream msg;
        msg << "petz::wyd: p = " << p << " outside (0, 1)";
        throw ParameterError(msg.str());
    }
    const double q = 1.0 - p;
    std::ostringstream name;
    name << "wyd(p=" << p << ")";
    return {name.str(), [p, q](double x) {
                const double l = std::log(x);
                if (std::abs(x - 1.0) <= kSeriesRadius) {
                    return 1.0 + l / 2.0 + (1.0 / 6.0 + p * q / 12.0) * l * l;
                }
                // x^p - 1 = expm1(p log x) keeps full precision near x = 1
                const double num = std::expm1(l);
                return p * q * num * num / (std::expm1(p * l) * std::expm1(q * l));
            },
            true};
}

MonotoneFunctionSpec wyd_for_alpha(double alpha) {
    if (alpha == 1.0 || alpha == -1.0) {
        return bkm();
    }
    if (!(alpha > -1.0 && alpha < 1.0)) {
        throw ParameterError("petz::wyd_for_alpha: alpha outside [-1, 1]");
    }
    return wyd((1.0 + alpha) / 2.0);
}

MonotoneFunctionSpec bkm() {
    return {"bkm", [](double x) {
                const double l = std::log(x);
                if (std::abs(x - 1.0) <= kSeriesRadius) {
                    return 1.0 + l / 2.0 + l * l / 6.0;
                }
                return (x - 1.0) / l;
            },
            true};
}

MonotoneFunctionSpec bures() {
    return {"bures", [](double x) { return (1.0 + x) / 2.0; }, true};
}

MonotoneFunctionSpec rld() {
    return {"rld", [](double x) { return 2.0 * x / (1.0 + x); }, true};
}

MonotoneFunctionSpec perturbed(const MonotoneFunctionSpec &f, double eps) {
    std::ostringstream name;
    name << f.name << "*(1" << (eps < 0 ? "" : "+") << eps << "*bump)";
    return {name.str(),
            [g = f.eval, eps](double t) {
                const double l = std::log(t);
                const double bump = l * l / (1.0 + l * l);
                return g(t) * (1.0 + eps * bump);
            },
            false};
}

} // namespace petz

std::vector<MonotoneFunctionSpec>
builtin_functions(std::span<const double> wyd_ps) {
    std::vector<MonotoneFunctionSpec> out;
    out.reserve(wyd_ps.size() + 3);
    for (const double p : wyd_ps) {
        out.push_back(petz::wyd(p));
    }
    out.push_back(petz::bkm());
    out.push_back(petz::bures());
    out.push_back(petz::rld());
    return out;
}

MonotoneFunctionSpec metric_by_name(const std::string &name, double alpha) {
    if (name == "wyd") {
        return petz::wyd_for_alpha(alpha);
    }
    if (name.rfind("wyd:", 0) == 0) {
        std::size_t used = 0;
        const std::string arg = name.substr(4);
        double p = 0.0;
        try {
            p = std::stod(arg, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != arg.size() || arg.empty()) {
            throw ParameterError("metric '" + name + "': bad WYD parameter");
        }
        return petz::wyd(p);
    }
    if (name == "bkm") {
        return petz::bkm();
    }
    if (name == "bures") {
        return petz::bures();
    }
    if (name == "rld") {
        return petz::rld();
    }
    throw ParameterError("unknown metric '" + name +
                         "' (expected wyd, wyd:<p>, bkm, bures or rld)");
}

// ---------------------------------------------------------------------------
// kernels

Matrix MetricKernel::apply(const Matrix &x) const {
    return apply_entrywise_kernel(base_spectrum, coefficients, x);
}

MetricKernel petz_kernel(const WeightMatrix &sigma,
                         const MonotoneFunctionSpec &f) {
    const Spectrum &spec = sigma.spectrum();
    const RealVector &l = spec.eigenvalues;
    const Eigen::Index n = l.size();
    RealMatrix c(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double fv = f(l(i) / l(j));
            if (!(std::isfinite(fv) && fv > 0.0)) {
                std::ostringstream msg;
                msg << "petz_kernel: f = " << f.name << " is not finite and "
                    << "positive at " << l(i) / l(j);
                throw ParameterError(msg.str());
            }
            c(i, j) = 1.0 / (l(j) * fv);
        }
    }
    return {spec, std::move(c)};
}

double metric_eval(const MetricKernel &kernel, const Matrix &a,
                   const Matrix &b) {
    const Matrix ae = kernel.base_spectrum.to_eigenbasis(a);
    const Matrix be = kernel.base_spectrum.to_eigenbasis(b);
    const Eigen::Index n = ae.rows();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex x = ae(i, j);
            const Complex y = be(i, j);
            acc += kernel.coefficients(i, j) *
                   (x.real() * y.real() + x.imag() * y.imag());
        }
    }
    return acc;
}

namespace {

void require_common_base(const WeightMatrix &sigma, const TangentVector &a,
                         const TangentVector &b, const char *where) {
    if (!same_base(sigma, a.base()) || !same_base(sigma, b.base())) {
        throw ParameterError(std::string(where) +
                             ": tangent vectors are not based at sigma");
    }
}

} // namespace

double metric_eval(const WeightMatrix &sigma, const MonotoneFunctionSpec &f,
                   const TangentVector &a, const TangentVector &b) {
    require_common_base(sigma, a, b, "metric_eval");
    return metric_eval(petz_kernel(sigma, f), a.mixture_rep().matrix(),
                       b.mixture_rep().matrix());
}

double wyd_direct(const WeightMatrix &rho, double alpha, const TangentVector &a,
                  const TangentVector &b) {
    if (!(alpha > -1.0 && alpha < 1.0)) {
        throw ParameterError(
            "wyd_direct: |alpha| >= 1, use bkm_direct for the limits");
    }
    require_common_base(rho, a, b, "wyd_direct");
    return hs_inner(alpha_representation(a, alpha),
                    alpha_representation(b, -alpha));
}

double bkm_direct(const WeightMatrix &rho, const TangentVector &a,
                  const TangentVector &b) {
    require_common_base(rho, a, b, "bkm_direct");
    return hs_inner(a.mixture_rep(), alpha_representation(b, 1.0));
}

// ---------------------------------------------------------------------------
// channels

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops)
    : ops_(std::move(kraus_ops)) {
    if (ops_.empty()) {
        throw ParameterError("KrausChannel: no Kraus operators");
    }
    const Eigen::Index in = ops_.front().cols();
    const Eigen::Index out = ops_.front().rows();
    Matrix acc = Matrix::Zero(in, in);
    for (const Matrix &k : ops_) {
        if (k.cols() != in || k.rows() != out) {
            throw DimensionMismatch("KrausChannel: inconsistent Kraus shapes");
        }
        acc += k.adjoint() * k;
    }
    const double dev = (acc - Matrix::Identity(in, in)).norm();
    if (!(dev <= 1e-10)) {
        std::ostringstream msg;
        msg << "KrausChannel: not trace preserving (|sum K^dagger K - I|_F = "
            << dev << ")";
        throw ParameterError(msg.str());
    }
}

KrausChannel KrausChannel::identity(Eigen::Index n) {
    return KrausChannel({Matrix::Identity(n, n)});
}

KrausChannel KrausChannel::depolarizing(Eigen::Index n, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw ParameterError("depolarizing: t outside [0, 1]");
    }
    std::vector<Matrix> ops;
    if (t < 1.0) {
        ops.push_back(std::sqrt(1.0 - t) * Matrix::Identity(n, n));
    }
    if (t > 0.0) {
        const double s = std::sqrt(t / static_cast<double>(n));
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                Matrix e = Matrix::Zero(n, n);
                e(i, j) = s;
                ops.push_back(std::move(e));
            }
        }
    }
    return KrausChannel(std::move(ops));
}

KrausChannel KrausChannel::partial_trace_second(Eigen::Index da,
                                                Eigen::Index db) {
    std::vector<Matrix> ops;
    for (Eigen::Index k = 0; k < db; ++k) {
        // K_k = I_a (x) <k|
        Matrix op = Matrix::Zero(da, da * db);
        for (Eigen::Index i = 0; i < da; ++i) {
            op(i, i * db + k) = 1.0;
        }
        ops.push_back(std::move(op));
    }
    return KrausChannel(std::move(ops));
}

Matrix apply_channel(const KrausChannel &s, const Matrix &x) {
    if (x.rows() != s.in_dim() || x.cols() != s.in_dim()) {
        std::ostringstream msg;
        msg << "apply_channel: channel input dimension " << s.in_dim()
            << " does not match " << x.rows() << "x" << x.cols();
        throw DimensionMismatch(msg.str());
    }
    Matrix out = Matrix::Zero(s.out_dim(), s.out_dim());
    for (const Matrix &k : s.kraus_ops()) {
        out += k * x * k.adjoint();
    }
    return out;
}

HermitianOperator apply_channel(const KrausChannel &s,
                                const HermitianOperator &x) {
    return HermitianOperator::symmetrized(apply_channel(s, x.matrix()));
}

MonotonicityReport monotonicity_check(const MonotoneFunctionSpec &f,
                                      const StateMatrix &rho,
                                      const TangentVector &a,
                                      const KrausChannel &s) {
    MonotonicityReport report;
    report.rhs = metric_eval(rho, f, a, a);

    HermitianOperator out = apply_channel(s, rho.matrix());
    HermitianOperator out_tangent = apply_channel(s, a.mixture_rep());
    const Eigen::Index n = out.dim();
    report.output_min_eigenvalue = spectral_decompose(out).min();
    if (report.output_min_eigenvalue < kChannelRegularizationFloor) {
        report.regularized = true;
        out = (1.0 - kChannelRegularizationMix) * out +
              HermitianOperator::identity(n) *
                  (kChannelRegularizationMix / static_cast<double>(n));
        // The tangent is pushed through the same affine mixing.
        out_tangent *= (1.0 - kChannelRegularizationMix);
    }
    try {
        const StateMatrix image(out);
        const TangentVector image_tangent(image, out_tangent);
        report.lhs = metric_eval(image, f, image_tangent, image_tangent);
        report.margin = report.rhs - report.lhs;
    } catch (const std::exception &) {
        report.inconclusive = true;
        report.lhs = std::numeric_limits<double>::quiet_NaN();
        report.margin = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

// ---------------------------------------------------------------------------
// entropies

double von_neumann_entropy(const StateMatrix &rho) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        const double l = rho.spectrum().eigenvalues(i);
        s -= l * std::log(l);
    }
    return s;
}

double relative_entropy(const StateMatrix &rho, const WeightMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatch("relative_entropy: dimension mismatch");
    }
    const HermitianOperator log_rho =
        apply_scalar_function(rho.spectrum(), fn::log());
    const HermitianOperator log_sigma =
        apply_scalar_function(sigma.spectrum(), fn::log());
    return hs_inner(rho.matrix(), log_rho - log_sigma);
}

} // namespace qig
