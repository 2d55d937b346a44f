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
 * Monotone Riemannian metrics on positive definite matrices.
 *
 * A metric in the Petz class is fixed by a function f on (0, inf) with
 * f(t) = t f(1/t) and f(1) = 1. In the eigenbasis of sigma it acts on
 * mixture representations entrywise:
 *
 *     g_sigma(A, B) = sum_ij conj(a_ij) c_ij b_ij,
 *     c_ij = 1 / (lambda_j f(lambda_i / lambda_j)).
 *
 * The Wigner-Yanase-Dyson metric Tr(A^(alpha) B^(-alpha)) belongs to this
 * class with f_p(x) = p(1-p)(x-1)^2 / ((x^p - 1)(x^(1-p) - 1)) and
 * p = (1 + alpha) / 2; wyd_direct() computes it from the embeddings instead,
 * which gives two independent routes to the same number.
 */
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qig/manifold.hpp"
#include "qig/matrix_core.hpp"

namespace qig {

/// A candidate Petz function. `claimed_monotone` is metadata only.
struct MonotoneFunctionSpec {
    std::string name;
    std::function<double(double)> eval;
    bool claimed_monotone = true;

    [[nodiscard]] double operator()(double x) const { return eval(x); }
};

struct SpecValidation {
    double symmetry_violation = 0.0;      ///< max rel |f(t) - t f(1/t)|
    double normalization_violation = 0.0; ///< |f(1) - 1|
    [[nodiscard]] bool ok() const {
        return symmetry_violation <= 1e-10 && normalization_violation <= 1e-12;
    }
};

/// Checks f(t) = t f(1/t) on t = 2^k, k = -6..6, and f(1) = 1.
[[nodiscard]] SpecValidation validate_spec(const MonotoneFunctionSpec &f);

namespace petz {
/// Wigner-Yanase-Dyson function f_p, p in (0, 1).
[[nodiscard]] MonotoneFunctionSpec wyd(double p);
/// f_p with p = (1 + alpha) / 2; the BKM function at alpha = +-1.
[[nodiscard]] MonotoneFunctionSpec wyd_for_alpha(double alpha);
/// (x - 1) / log x.
[[nodiscard]] MonotoneFunctionSpec bkm();
/// (1 + x) / 2.
[[nodiscard]] MonotoneFunctionSpec bures();
/// 2x / (1 + x).
[[nodiscard]] MonotoneFunctionSpec rld();
/// f(t) (1 + eps b(t)) with b(t) = log^2 t / (1 + log^2 t). Keeps symmetry
/// and normalisation; not claimed monotone.
[[nodiscard]] MonotoneFunctionSpec perturbed(const MonotoneFunctionSpec &f,
                                             double eps);
} // namespace petz

/// WYD(p) for each requested p, then BKM, Bures, RLD.
[[nodiscard]] std::vector<MonotoneFunctionSpec>
builtin_functions(std::span<const double> wyd_ps);

/// Looks up "wyd:<p>", "bkm", "bures", "rld"; "wyd" alone resolves through
/// wyd_for_alpha(alpha). Throws ParameterError on unknown names.
[[nodiscard]] MonotoneFunctionSpec metric_by_name(const std::string &name,
                                                  double alpha);

/// Entrywise Petz kernel at sigma.
struct MetricKernel {
    Spectrum base_spectrum;
    RealMatrix coefficients;

    /// K_sigma(X): entrywise multiplication in the eigenbasis.
    [[nodiscard]] Matrix apply(const Matrix &x) const;
};

/// Throws NotPositiveDefinite through WeightMatrix; ParameterError when f is
/// not finite and positive on the eigenvalue ratios.
[[nodiscard]] MetricKernel petz_kernel(const WeightMatrix &sigma,
                                       const MonotoneFunctionSpec &f);

/// sum_ij conj(a_ij) c_ij b_ij for mixture representations a, b.
[[nodiscard]] double metric_eval(const MetricKernel &kernel, const Matrix &a,
                                 const Matrix &b);

/// Throws ParameterError when A, B and sigma are not based at one point.
[[nodiscard]] double metric_eval(const WeightMatrix &sigma,
                                 const MonotoneFunctionSpec &f,
                                 const TangentVector &a,
                                 const TangentVector &b);

/// Tr(A^(alpha) B^(-alpha)), alpha in (-1, 1).
[[nodiscard]] double wyd_direct(const WeightMatrix &rho, double alpha,
                                const TangentVector &a, const TangentVector &b);

/// Tr(A^(-1) B^(1)).
[[nodiscard]] double bkm_direct(const WeightMatrix &rho, const TangentVector &a,
                                const TangentVector &b);

// ---------------------------------------------------------------------------
// channels

/// Completely positive trace-preserving map X -> sum_k K_k X K_k^dagger.
class KrausChannel {
  public:
    /// Validates sum K^dagger K = I within 1e-10.
    explicit KrausChannel(std::vector<Matrix> kraus_ops);

    [[nodiscard]] static KrausChannel identity(Eigen::Index n);
    /// X -> (1 - t) X + t Tr(X) I / n.
    [[nodiscard]] static KrausChannel depolarizing(Eigen::Index n, double t);
    /// Partial trace over the second factor of C^da (x) C^db.
    [[nodiscard]] static KrausChannel partial_trace_second(Eigen::Index da,
                                                           Eigen::Index db);

    [[nodiscard]] const std::vector<Matrix> &kraus_ops() const noexcept {
        return ops_;
    }
    [[nodiscard]] Eigen::Index in_dim() const { return ops_.front().cols(); }
    [[nodiscard]] Eigen::Index out_dim() const { return ops_.front().rows(); }

  private:
    std::vector<Matrix> ops_;
};

[[nodiscard]] Matrix apply_channel(const KrausChannel &s, const Matrix &x);
[[nodiscard]] HermitianOperator apply_channel(const KrausChannel &s,
                                              const HermitianOperator &x);

struct MonotonicityReport {
    double lhs = 0.0; ///< g_{S(rho)}(S(A), S(A))
    double rhs = 0.0; ///< g_rho(A, A)
    double margin = 0.0;
    double output_min_eigenvalue = 0.0;
    bool regularized = false;
    bool inconclusive = false;
};

/// Output eigenvalues below this are regularised before kernel evaluation.
inline constexpr double kChannelRegularizationFloor = 1e-12;
inline constexpr double kChannelRegularizationMix = 1e-10;

[[nodiscard]] MonotonicityReport
monotonicity_check(const MonotoneFunctionSpec &f, const StateMatrix &rho,
                   const TangentVector &a, const KrausChannel &s);

// ---------------------------------------------------------------------------
// entropies

/// -Tr(rho log rho).
[[nodiscard]] double von_neumann_entropy(const StateMatrix &rho);
/// Tr[rho (log rho - log sigma)].
[[nodiscard]] double relative_entropy(const StateMatrix &rho,
                                      const WeightMatrix &sigma);

} // namespace qig
