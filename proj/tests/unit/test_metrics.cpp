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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qig/error.hpp"
#include "qig/metrics.hpp"
#include "qig/random.hpp"

namespace {

using qig::HermitianOperator;
using qig::Matrix;
using qig::RealVector;
using qig::StateMatrix;
using qig::TangentVector;
using qig::WeightMatrix;
namespace oracle = qig::oracle;
namespace petz = qig::petz;

HermitianOperator herm(const Matrix &m) { return HermitianOperator(m); }
StateMatrix state(std::initializer_list<double> d) {
    return StateMatrix(herm(oracle::diag(d)));
}

std::vector<qig::MonotoneFunctionSpec> all_builtins() {
    const double ps[] = {0.05, 0.2, 0.5, 0.7, 0.95};
    return qig::builtin_functions(ps);
}

TEST(PetzFunctions, Invariants) {
    for (const auto &f : all_builtins()) {
        const auto v = qig::validate_spec(f);
        EXPECT_TRUE(v.ok()) << f.name;
        EXPECT_LE(v.symmetry_violation, 1e-10) << f.name;
        EXPECT_LE(v.normalization_violation, 1e-12) << f.name;
        EXPECT_NEAR(f(1.0), 1.0, 1e-12) << f.name;
    }
}

TEST(PetzFunctions, Values) {
    EXPECT_NEAR(petz::wyd(0.5)(4.0), 9.0 / 4.0, 1e-14);
    EXPECT_NEAR(petz::bures()(3.0), 2.0, 1e-15);
    EXPECT_NEAR(petz::rld()(3.0), 1.5, 1e-15);
    EXPECT_NEAR(petz::bkm()(std::numbers::e), std::numbers::e - 1.0, 1e-14);
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
        EXPECT_NEAR(petz::wyd(p)(1.0), 1.0, 1e-14);
        // continuity across the removable singularity
        EXPECT_NEAR(petz::wyd(p)(1.0 + 1e-9), 1.0 + 0.5e-9, 1e-12);
    }
    EXPECT_NEAR(petz::bkm()(1.0 + 1e-9), 1.0 + 0.5e-9, 1e-12);
}

TEST(PetzFunctions, AlphaEndpointsAreBkm) {
    for (double x : {0.1, 0.5, 2.0, 7.0}) {
        EXPECT_DOUBLE_EQ(petz::wyd_for_alpha(1.0)(x), petz::bkm()(x));
        EXPECT_DOUBLE_EQ(petz::wyd_for_alpha(-1.0)(x), petz::bkm()(x));
        EXPECT_DOUBLE_EQ(petz::wyd_for_alpha(0.4)(x), petz::wyd(0.7)(x));
    }
}

TEST(PetzFunctions, Errors) {
    EXPECT_THROW((void)petz::wyd(0.0), qig::ParameterError);
    EXPECT_THROW((void)petz::wyd(1.0), qig::ParameterError);
    EXPECT_THROW((void)petz::wyd(-0.2), qig::ParameterError);
    EXPECT_THROW((void)qig::metric_by_name("nope", 0.0), qig::ParameterError);
    EXPECT_EQ(qig::metric_by_name("wyd", 0.0).name,
              petz::wyd(0.5).name);
}

TEST(PetzFunctions, FunctionOrdering) {
    // RLD <= f <= Bures pointwise for normalised monotone f
    for (const auto &f : all_builtins()) {
        for (int k = -6; k <= 6; ++k) {
            const double x = std::pow(2.0, k);
            EXPECT_LE(petz::rld()(x), f(x) * (1.0 + 1e-12)) << f.name;
            EXPECT_LE(f(x), petz::bures()(x) * (1.0 + 1e-12)) << f.name;
        }
    }
}

TEST(PetzKernel, Examples) {
    for (const auto &f : all_builtins()) {
        const auto k = qig::petz_kernel(StateMatrix::maximally_mixed(2), f);
        EXPECT_LE((k.coefficients.array() - 2.0).abs().maxCoeff(), 1e-12)
            << f.name;
    }
    const auto rho = state({0.75, 0.25});
    EXPECT_NEAR(qig::petz_kernel(rho, petz::bkm()).coefficients(0, 1),
                2.0 * std::log(3.0), 1e-13);
    EXPECT_NEAR(qig::petz_kernel(rho, petz::wyd(0.5)).coefficients(0, 1),
                16.0 - 8.0 * std::sqrt(3.0), 1e-13);
}

TEST(PetzKernel, Invariants) {
    qig::Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sigma = qig::random_weight(rng, 2 + trial % 3);
        for (const auto &f : all_builtins()) {
            const auto k = qig::petz_kernel(sigma, f);
            const auto &c = k.coefficients;
            EXPECT_LE((c - c.transpose()).cwiseAbs().maxCoeff(),
                      1e-10 * c.cwiseAbs().maxCoeff());
            EXPECT_GT(c.minCoeff(), 0.0);
            for (Eigen::Index i = 0; i < c.rows(); ++i) {
                EXPECT_NEAR(c(i, i) * sigma.spectrum().eigenvalues(i), 1.0,
                            1e-12);
            }
        }
    }
}

TEST(PetzKernel, RejectsBadFunction) {
    const qig::MonotoneFunctionSpec bad{"neg", [](double) { return -1.0; },
                                        false};
    EXPECT_THROW((void)qig::petz_kernel(state({0.75, 0.25}), bad),
                 qig::ParameterError);
}

TEST(MetricEval, Examples) {
    const auto rho = state({0.75, 0.25});
    const TangentVector vx(rho, herm(oracle::pauli_x()));
    const TangentVector vz(rho, herm(oracle::pauli_z()));
    EXPECT_NEAR(qig::metric_eval(rho, petz::bkm(), vx, vx),
                4.0 * std::log(3.0), 1e-13);
    for (const auto &f : all_builtins()) {
        EXPECT_NEAR(qig::metric_eval(rho, f, vz, vz), 16.0 / 3.0, 1e-13)
            << f.name;
    }
    const TangentVector zero(rho, HermitianOperator::zero(2));
    EXPECT_EQ(qig::metric_eval(rho, petz::bures(), zero, zero), 0.0);
    const TangentVector hz(StateMatrix::maximally_mixed(2),
                           herm(oracle::pauli_z()));
    EXPECT_NEAR(qig::metric_eval(hz.base(), petz::bkm(), hz, hz), 4.0, 1e-14);
}

TEST(MetricEval, BaseMismatchRejected) {
    const auto rho = state({0.75, 0.25});
    const TangentVector a(rho, herm(oracle::pauli_x()));
    const TangentVector b(StateMatrix::maximally_mixed(2),
                          herm(oracle::pauli_x()));
    EXPECT_THROW((void)qig::metric_eval(rho, petz::bkm(), a, b),
                 qig::ParameterError);
}

TEST(MetricEval, SymmetryBilinearityPositivity) {
    qig::Rng rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = qig::random_state(rng, 2 + trial % 3);
        const auto a = qig::random_tangent(rng, rho);
        const auto b = qig::random_tangent(rng, rho);
        const TangentVector ab(rho, 2.0 * a.mixture_rep() - b.mixture_rep());
        for (const auto &f : all_builtins()) {
            const double gab = qig::metric_eval(rho, f, a, b);
            EXPECT_NEAR(gab, qig::metric_eval(rho, f, b, a),
                        1e-12 * (1.0 + std::abs(gab)));
            EXPECT_NEAR(qig::metric_eval(rho, f, ab, b),
                        2.0 * gab - qig::metric_eval(rho, f, b, b), 1e-10);
            EXPECT_GT(qig::metric_eval(rho, f, a, a), 0.0);
        }
    }
}

TEST(MetricEval, QuadraticFormOrdering) {
    qig::Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const auto rho = qig::random_state(rng, 2 + trial % 3);
        const auto a = qig::random_tangent(rng, rho);
        const double lo = qig::metric_eval(rho, petz::bures(), a, a);
        const double hi = qig::metric_eval(rho, petz::rld(), a, a);
        for (const auto &f : all_builtins()) {
            const double g = qig::metric_eval(rho, f, a, a);
            EXPECT_LE(lo, g * (1.0 + 1e-12)) << f.name;
            EXPECT_LE(g, hi * (1.0 + 1e-12)) << f.name;
        }
    }
}

TEST(WydDirect, Examples) {
    const auto rho = state({0.75, 0.25});
    const TangentVector d(rho, herm(oracle::diag({1, -1})));
    for (double a : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
        EXPECT_NEAR(qig::wyd_direct(rho, a, d, d), 16.0 / 3.0, 1e-12);
    }
    EXPECT_NEAR(qig::bkm_direct(rho, d, d), 16.0 / 3.0, 1e-12);
    const TangentVector vx(rho, herm(oracle::pauli_x()));
    EXPECT_NEAR(qig::wyd_direct(rho, 0.0, vx, vx),
                2.0 * (16.0 - 8.0 * std::sqrt(3.0)), 1e-12);
    EXPECT_NEAR(qig::bkm_direct(rho, vx, vx), 4.0 * std::log(3.0), 1e-12);
    const TangentVector hz(StateMatrix::maximally_mixed(2),
                           herm(oracle::pauli_z()));
    EXPECT_NEAR(qig::bkm_direct(hz.base(), hz, hz), 4.0, 1e-13);
    EXPECT_THROW((void)qig::wyd_direct(rho, 1.0, vx, vx), qig::ParameterError);
}

TEST(WydDirect, KernelEquivalenceAndAlphaSymmetry) {
    qig::Rng rng(73);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rho = qig::random_state(rng, 2 + trial % 3);
        const auto a = qig::random_tangent(rng, rho);
        const auto b = qig::random_tangent(rng, rho);
        for (double al : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
            const double direct = qig::wyd_direct(rho, al, a, b);
            const double kernel =
                qig::metric_eval(rho, petz::wyd_for_alpha(al), a, b);
            EXPECT_LE(std::abs(direct - kernel),
                      1e-8 * std::max(1.0, std::abs(kernel)));
            EXPECT_NEAR(direct, qig::wyd_direct(rho, -al, a, b),
                        1e-10 * std::max(1.0, std::abs(direct)));
        }
        const double bkm = qig::bkm_direct(rho, a, b);
        EXPECT_LE(std::abs(bkm - qig::metric_eval(rho, petz::bkm(), a, b)),
                  1e-8 * std::max(1.0, std::abs(bkm)));
    }
}

TEST(WydDirect, BkmLimit) {
    qig::Rng rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = qig::random_state(rng, 3);
        const auto a = qig::random_tangent(rng, rho);
        const double bkm = qig::bkm_direct(rho, a, a);
        EXPECT_NEAR(qig::wyd_direct(rho, 0.999, a, a), bkm, 1e-3 * bkm);
        EXPECT_NEAR(qig::wyd_direct(rho, -0.999, a, a), bkm, 1e-3 * bkm);
    }
}

TEST(WydDirect, ClassicalReduction) {
    qig::Rng rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        RealVector p(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            p(i) = rng.uniform(0.1, 1.0);
        }
        p /= p.sum();
        RealVector da(n);
        RealVector db(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            da(i) = rng.normal();
            db(i) = rng.normal();
        }
        da.array() -= da.mean();
        db.array() -= db.mean();
        const StateMatrix rho(HermitianOperator::diagonal(p));
        const TangentVector a(rho, HermitianOperator::diagonal(da));
        const TangentVector b(rho, HermitianOperator::diagonal(db));
        const double fisher = oracle::fisher(p, da, db);
        for (const auto &f : all_builtins()) {
            EXPECT_NEAR(qig::metric_eval(rho, f, a, b), fisher, 1e-9)
                << f.name;
        }
        for (double al : {-0.9, 0.0, 0.9}) {
            EXPECT_NEAR(qig::wyd_direct(rho, al, a, b), fisher, 1e-9);
        }
    }
}

TEST(Channels, Examples) {
    qig::Rng rng(89);
    const auto rho = qig::random_state(rng, 3);
    EXPECT_LE((qig::apply_channel(qig::KrausChannel::identity(3), rho.matrix())
                   .matrix() -
               rho.matrix().matrix())
                  .norm(),
              1e-15);
    EXPECT_LE(
        (qig::apply_channel(qig::KrausChannel::depolarizing(3, 1.0),
                            rho.matrix())
             .matrix() -
         Matrix::Identity(3, 3) / 3.0)
            .norm(),
        1e-14);
    const auto a = qig::random_state(rng, 2);
    const auto t = qig::random_state(rng, 3);
    const Matrix prod = Eigen::kroneckerProduct(a.matrix().matrix(),
                                                t.matrix().matrix());
    const Matrix out =
        qig::apply_channel(qig::KrausChannel::partial_trace_second(2, 3), prod);
    EXPECT_LE((out - a.matrix().matrix()).norm(), 1e-14);
    // against a direct partial trace on a non-product input
    const auto big = qig::random_state(rng, 6);
    EXPECT_LE((qig::apply_channel(qig::KrausChannel::partial_trace_second(2, 3),
                                  big.matrix().matrix()) -
               oracle::partial_trace_second(big.matrix().matrix(), 2, 3))
                  .norm(),
              1e-14);
}

TEST(Channels, TracePreservingAndPositive) {
    qig::Rng rng(97);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = qig::random_channel(rng, 3, 2, 2 + trial % 4);
        const auto rho = qig::random_state(rng, 3);
        const auto out = qig::apply_channel(s, rho.matrix());
        EXPECT_NEAR(out.trace(), 1.0, 1e-12);
        EXPECT_GT(qig::spectral_decompose(out).min(), -1e-12);
    }
}

TEST(Channels, Errors) {
    std::vector<Matrix> ops = {Matrix::Identity(2, 2) * 0.5};
    EXPECT_THROW(qig::KrausChannel{ops}, std::invalid_argument);
    EXPECT_THROW((void)qig::apply_channel(qig::KrausChannel::identity(2),
                                          Matrix(Matrix::Identity(3, 3))),
                 qig::DimensionMismatch);
}

TEST(Monotonicity, IdentityChannelHasZeroMargin) {
    qig::Rng rng(101);
    const auto rho = qig::random_state(rng, 3);
    const auto a = qig::random_tangent(rng, rho);
    const auto rep = qig::monotonicity_check(petz::bures(), rho, a,
                                             qig::KrausChannel::identity(3));
    EXPECT_NEAR(rep.margin, 0.0, 1e-12);
    EXPECT_FALSE(rep.inconclusive);
}

TEST(Monotonicity, DepolarizingContractsBures) {
    qig::Rng rng(103);
    for (int trial = 0; trial < 50; ++trial) {
        const auto rho = qig::random_state(rng, 2);
        const auto a = qig::random_tangent(rng, rho);
        const double t = rng.uniform(0.05, 0.95);
        const auto rep = qig::monotonicity_check(
            petz::bures(), rho, a, qig::KrausChannel::depolarizing(2, t));
        EXPECT_GT(rep.margin, 0.0);
    }
}

TEST(Monotonicity, PartialTraceCampaignWyd) {
    qig::Rng rng(107);
    const auto f = petz::wyd_for_alpha(0.4);
    const auto ptr = qig::KrausChannel::partial_trace_second(2, 2);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto rho = qig::random_state(rng, 4);
        const auto a = qig::random_tangent(rng, rho);
        const auto rep = qig::monotonicity_check(f, rho, a, ptr);
        ASSERT_FALSE(rep.inconclusive);
        worst = std::min(worst, rep.margin);
    }
    EXPECT_GE(worst, -1e-9);
}

TEST(Monotonicity, RandomChannelsAllBuiltins) {
    qig::Rng rng(109);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho = qig::random_state(rng, 3);
        const auto a = qig::random_tangent(rng, rho);
        const auto s = qig::random_channel(rng, 3, 2, 2 + trial % 3);
        for (const auto &f : all_builtins()) {
            const auto rep = qig::monotonicity_check(f, rho, a, s);
            if (!rep.inconclusive) {
                EXPECT_GE(rep.margin, -1e-9) << f.name;
            }
        }
    }
}

TEST(Monotonicity, SingularOutputIsRegularised) {
    // a channel that collapses every input to a pure state
    Matrix k0 = Matrix::Zero(2, 2);
    Matrix k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k1(0, 1) = 1.0;
    const qig::KrausChannel reset({k0, k1});
    const auto rho = state({0.6, 0.4});
    const TangentVector a(rho, herm(oracle::pauli_x()));
    const auto rep = qig::monotonicity_check(petz::bures(), rho, a, reset);
    EXPECT_TRUE(rep.regularized || rep.inconclusive);
    EXPECT_TRUE(std::isfinite(rep.margin));
}

TEST(Entropy, Examples) {
    for (Eigen::Index n = 1; n <= 4; ++n) {
        const auto rho = StateMatrix::maximally_mixed(n);
        EXPECT_NEAR(qig::von_neumann_entropy(rho),
                    std::log(static_cast<double>(n)), 1e-14);
        EXPECT_NEAR(qig::relative_entropy(rho, rho), 0.0, 1e-14);
    }
    EXPECT_NEAR(qig::von_neumann_entropy(state({0.75, 0.25})),
                -0.75 * std::log(0.75) - 0.25 * std::log(0.25), 1e-14);
    EXPECT_NEAR(qig::von_neumann_entropy(state({0.75, 0.25})), 0.5623, 1e-4);
    const double s = qig::relative_entropy(state({0.5, 0.5}),
                                           state({0.75, 0.25}));
    EXPECT_NEAR(s, 0.5 * (std::log(0.5) - std::log(0.75)) +
                       0.5 * (std::log(0.5) - std::log(0.25)),
                1e-14);
    EXPECT_NEAR(s, 0.1438, 1e-4);
}

TEST(Entropy, BoundsAndPositivity) {
    qig::Rng rng(113);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        const auto rho = qig::random_state(rng, n);
        const auto sigma = qig::random_state(rng, n);
        const double s = qig::von_neumann_entropy(rho);
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, std::log(static_cast<double>(n)) + 1e-12);
        EXPECT_GT(qig::relative_entropy(rho, sigma), 0.0);
        // against the Schur-based logarithm
        const Matrix &r = rho.matrix().matrix();
        const double oracle_s =
            -(r * oracle::mat_log(r)).trace().real();
        EXPECT_NEAR(s, oracle_s, 1e-10);
    }
}

} // namespace
