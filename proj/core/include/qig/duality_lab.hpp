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
 * Numerical verification and falsification of duality statements.
 *
 * The central quantity is the duality defect of a triple (g, nabla, nabla*)
 * on a parametrized family,
 *
 *     D_ijk = d_i g(d_j, d_k) - g(nabla_i d_j, d_k) - g(d_j, nabla*_i d_k),
 *
 * which vanishes identically iff the connections are dual for g. Positive
 * statements are checked against kDualityTolerance, negative ones against
 * the separation kFalsificationGap.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qig/connections.hpp"
#include "qig/metrics.hpp"

namespace qig {

inline constexpr double kDualityTolerance = 5e-5;
inline constexpr double kFalsificationGap = 1e-2;

enum class Verdict { dual, not_dual, inconclusive };

[[nodiscard]] const char *to_string(Verdict v);

/// dual when value <= tol, not_dual when value >= gap, else inconclusive.
[[nodiscard]] Verdict classify(double value, double tol = kDualityTolerance,
                               double gap = kFalsificationGap);

// ---------------------------------------------------------------------------
// duality defect

struct DualityReport {
    std::string metric_name;
    double alpha = 0.0;
    ManifoldKind kind = ManifoldKind::extended;
    double metric_scale = 1.0;
    double defect = 0.0;
    int param_dim = 0;
    /// max over the grid of |D_ijk|, row-major in (i, j, k).
    std::vector<double> per_triple_defects;
    std::vector<RealVector> grid;

    [[nodiscard]] double per_triple(int i, int j, int k) const;
};

/// Defect of (metric_scale * g_f, nabla^(alpha), nabla^(-alpha)). The metric
/// derivative uses a fourth-order central difference; connections come from
/// the family's second derivatives. Chart failures near the grid surface as
/// DiscretizationError.
[[nodiscard]] DualityReport
duality_defect(const ParametrizedFamily &family,
               const std::vector<RealVector> &grid,
               const MonotoneFunctionSpec &f, double alpha, ManifoldKind kind,
               double metric_scale = 1.0);

/// A family, its sample points and the manifold the connections live on.
struct DefectCase {
    ParametrizedFamily family;
    std::vector<RealVector> grid;
    ManifoldKind kind;
};

/// Qubit and qutrit state families on both manifolds plus the qubit and
/// qutrit weight families on the extended manifold, grid_size points each.
[[nodiscard]] std::vector<DefectCase>
documented_ensemble(std::uint64_t seed, int grid_size = 3);

/// The falsification witness: qubit states on the state manifold.
[[nodiscard]] DefectCase witness_case(std::uint64_t seed, int grid_size = 3);

/// Maximum defect over the cases.
[[nodiscard]] double ensemble_defect(const std::vector<DefectCase> &cases,
                                     const MonotoneFunctionSpec &f,
                                     double alpha, double metric_scale = 1.0);

// ---------------------------------------------------------------------------
// transport

struct TransportDualityReport {
    std::string metric_name;
    double alpha = 0.0;
    ManifoldKind kind = ManifoldKind::extended;
    std::vector<double> t;
    std::vector<double> values; ///< g(tau Y, tau* Z) at each t
    double deviation = 0.0;     ///< max |values - values[0]|
};

/// Evaluates g_f(tau_alpha Y, tau_{-alpha} Z) at t = k / sample_count.
[[nodiscard]] TransportDualityReport
transport_duality_check(const CurveSpec &curve, const MonotoneFunctionSpec &f,
                        double alpha, const TangentVector &y,
                        const TangentVector &z, ManifoldKind kind,
                        int sample_count = 8);

/// Segment between two fixed parameter points of the qubit weight family
/// (extended) or qubit state family (states).
[[nodiscard]] CurveSpec documented_transport_curve(ManifoldKind kind);

/// Y = d_0 + d_1 and Z = d_1 + d_2 at the start of the curve.
[[nodiscard]] std::pair<TangentVector, TangentVector>
documented_transport_vectors(const CurveSpec &curve);

// ---------------------------------------------------------------------------
// potentials and dual coordinates

/// Largest Frobenius norm of ext_covariant_derivative over index pairs.
[[nodiscard]] double flatness_residual(const ParametrizedFamily &family,
                                       const RealVector &theta, double alpha);

inline constexpr double kFlatnessTolerance = 1e-6;

/// (2 / (1 + alpha)) Tr sigma(theta).
[[nodiscard]] double alpha_potential(const ParametrizedFamily &family,
                                     const RealVector &theta, double alpha);

struct PotentialReport {
    double alpha = 0.0;
    RealVector theta;
    RealMatrix hessian;       ///< finite-difference Hessian of the potential
    RealMatrix metric_matrix; ///< g^(alpha)_ij from the Petz kernel
    double residual = 0.0;    ///< max |hessian - metric_matrix|
    double flatness = 0.0;
    double regression_residual = 0.0;
    int regression_points = 0;
};

struct PotentialOptions {
    int regression_points = 8;
    double perturbation = 0.02;
    std::uint64_t seed = 7;
};

/// Checks Hessian(potential) = g^(alpha) at theta, and that the gradient
/// eta_i = d_i potential is an affine function of the (-alpha)-affine
/// coordinates on a cloud of nearby points. Throws ParameterError if the
/// family is not alpha-affine at theta.
[[nodiscard]] PotentialReport potential_check(const ParametrizedFamily &family,
                                              const RealVector &theta,
                                              double alpha,
                                              const PotentialOptions &opts = {});

struct DualCoordinateReport {
    double alpha = 0.0;
    double jacobian_residual = 0.0; ///< max |d eta_i / d theta^j - g_ij|
    double legendre_residual = 0.0; ///< max |Psi + Phi - theta . eta|
    int points = 0;
};

[[nodiscard]] DualCoordinateReport
dual_coordinate_check(const ParametrizedFamily &family,
                      const std::vector<RealVector> &grid, double alpha);

// ---------------------------------------------------------------------------
// uniqueness scan

struct UniquenessCandidate {
    MonotoneFunctionSpec f;
    double scale = 1.0;
    bool expect_dual = false;
    [[nodiscard]] std::string label() const;
};

struct UniquenessEntry {
    std::string name;
    double defect = 0.0;
    bool expect_dual = false;
    Verdict verdict = Verdict::inconclusive;
};

struct UniquenessScanResult {
    double alpha = 0.0;
    std::vector<UniquenessEntry> entries;
    bool reference_minimal = false; ///< an expected-dual entry has the min
    bool all_as_expected = false;
    bool any_inconclusive = false;
    [[nodiscard]] bool passed() const {
        return reference_minimal && all_as_expected && !any_inconclusive;
    }
};

/// WYD((1 + alpha) / 2), 3 * WYD, BKM, Bures, RLD and two perturbations of
/// WYD. At alpha = +-1 the reference is BKM.
[[nodiscard]] std::vector<UniquenessCandidate>
default_uniqueness_candidates(double alpha);

[[nodiscard]] UniquenessScanResult
uniqueness_scan(double alpha, const std::vector<UniquenessCandidate> &candidates,
                const std::vector<DefectCase> &cases);

// ---------------------------------------------------------------------------
// convex combination of the +-1 connections

struct ConvexityReport {
    double alpha = 0.0;
    double quantum_difference = 0.0;   ///< generic families
    double classical_difference = 0.0; ///< diagonal family
    double bkm_defect = 0.0; ///< defect of (BKM, nabla^alpha, nabla^-alpha)
};

inline constexpr double kConvexityWitness = 1e-4;
inline constexpr double kClassicalTolerance = 1e-8;

/// Max mixture-norm difference between nabla^(alpha) on the states and
/// the convex combination of nabla^(1) and nabla^(-1).
[[nodiscard]] double convexity_difference(const ParametrizedFamily &family,
                                          const std::vector<RealVector> &grid,
                                          double alpha);

[[nodiscard]] ConvexityReport convexity_failure_check(double alpha,
                                                      std::uint64_t seed,
                                                      int grid_size = 3);

struct ClassicalReductionReport {
    /// max relative deviation of every built-in metric from classical Fisher
    double fisher_deviation = 0.0;
    /// max relative spread of WYD over alpha on the same vectors
    double alpha_spread = 0.0;
    int samples = 0;
};

inline constexpr double kClassicalReductionTolerance = 1e-9;

/// Diagonal states and diagonal tangents with N in {2, 3, 4}.
[[nodiscard]] ClassicalReductionReport
classical_reduction_check(std::uint64_t seed, int samples = 20);

// ---------------------------------------------------------------------------
// flatness and curvature of the state manifold

struct FlatnessReport {
    double alpha = 0.0;
    double max_residual = 0.0;
    int points = 0;
};

/// flatness_residual of affine_family(alpha) at seeded weights.
[[nodiscard]] FlatnessReport flatness_check(double alpha, Eigen::Index n,
                                            std::uint64_t seed, int points = 3);

struct PathDependenceReport {
    double alpha = 0.0;
    double difference = 0.0; ///< Frobenius norm of the mixture difference
    TangentVector straight;
    TangentVector detour;
};

inline constexpr double kPathDependenceWitness = 1e-3;

/// Projected transport on Bloch states from r = (0.5, 0, 0) to (0, 0.5, 0)
/// along the straight segment and through (0, 0, 0.5).
[[nodiscard]] PathDependenceReport path_dependence_witness(double alpha,
                                                           int step_count = 256);

// ---------------------------------------------------------------------------
// metric cross-checks

struct KernelDirectReport {
    Eigen::Index n = 0;
    double alpha = 0.0;
    int trials = 0;
    double max_relative_error = 0.0;
};

inline constexpr double kKernelDirectTolerance = 1e-8;

/// |wyd_direct - metric_eval(f_p)| / |metric_eval| on random (rho, A, B);
/// bkm_direct at alpha = +-1.
[[nodiscard]] KernelDirectReport kernel_direct_equivalence(Eigen::Index n,
                                                           double alpha,
                                                           int trials,
                                                           std::uint64_t seed);

struct MonotonicityCampaignReport {
    std::string metric_name;
    int trials = 0;
    double min_margin = 0.0;
    int depolarizing_trials = 0;
    int depolarizing_positive = 0;
    int regularized = 0;
    int inconclusive = 0;
};

inline constexpr double kMonotonicityTolerance = 1e-9;

/// Cycles through random Kraus channels, depolarizing channels and partial
/// traces; trial k draws from split_seed(seed, k).
[[nodiscard]] MonotonicityCampaignReport
monotonicity_campaign(const MonotoneFunctionSpec &f, int trials,
                      std::uint64_t seed);

// ---------------------------------------------------------------------------
// entropy

/// exp(sum theta^i Y_i - Psi(theta) I) with Psi fixed by unit trace.
class GibbsFamily {
  public:
    /// Throws ParameterError unless {I, Y_1..Y_m} is linearly independent.
    explicit GibbsFamily(std::vector<HermitianOperator> observables);

    [[nodiscard]] const std::vector<HermitianOperator> &observables() const {
        return ys_;
    }
    [[nodiscard]] int size() const { return static_cast<int>(ys_.size()); }
    [[nodiscard]] Eigen::Index dim() const { return ys_.front().dim(); }

    [[nodiscard]] double log_partition(const RealVector &theta) const;
    [[nodiscard]] StateMatrix state(const RealVector &theta) const;
    /// Tr(sigma(theta) Y_i).
    [[nodiscard]] RealVector means(const RealVector &theta) const;
    /// d_i Tr(sigma Y_j) (the BKM Gram matrix of the tangents).
    [[nodiscard]] RealMatrix mean_jacobian(const RealVector &theta) const;
    /// The chart as a ParametrizedFamily with analytic first derivatives.
    [[nodiscard]] ParametrizedFamily family() const;

  private:
    std::vector<HermitianOperator> ys_;
};

struct EntropyProjectionReport {
    RealVector theta;
    int iterations = 0;
    bool converged = false;
    double gradient_norm = 0.0;
    double mean_mismatch = 0.0;  ///< max_i |Tr(sigma* Y_i) - Tr(rho Y_i)|
    double orthogonality = 0.0;  ///< max_i |g_BKM(rho - sigma*, d_i sigma*)|
    double divergence = 0.0;     ///< S(rho | sigma*)
};

inline constexpr int kEntropyMaxIterations = 200;
inline constexpr double kMeanMatchingTolerance = 1e-7;
inline constexpr double kOrthogonalityTolerance = 1e-6;

/// Minimises S(rho | sigma(theta)) by damped Newton from theta = 0.
[[nodiscard]] EntropyProjectionReport
entropy_projection_demo(const StateMatrix &rho, const GibbsFamily &g,
                        int max_iterations = kEntropyMaxIterations);

struct TaylorReport {
    double t = 0.0;
    double divergence = 0.0;  ///< S(rho | rho + t D)
    double quadratic = 0.0;   ///< t^2 / 2 * g_BKM(D, D)
    double abs_error = 0.0;
    /// |[S(rho|rho+tD) + S(rho|rho-tD)] / t^2 - g_BKM(D, D)| / g_BKM(D, D)
    double symmetric_relative_error = 0.0;
};

inline constexpr double kTaylorTolerance = 1e-4;
/// Bound on symmetric_relative_error; the leading error term is O(t^2).
inline constexpr double kTaylorSymmetricTolerance = 1e-2;

[[nodiscard]] TaylorReport relative_entropy_taylor_check(const StateMatrix &rho,
                                                         const TangentVector &d,
                                                         double t = 1e-2);

} // namespace qig
