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
#include "qig/matrix_core.hpp"
#include "qig/random.hpp"

namespace {

using qig::HermitianOperator;
using qig::Matrix;
using qig::RealVector;
namespace oracle = qig::oracle;

HermitianOperator herm(const Matrix &m) { return HermitianOperator(m); }

TEST(SpectralDecompose, DiagonalInputIsSorted) {
    const auto spec = qig::spectral_decompose(herm(oracle::diag({0.75, 0.25})));
    EXPECT_NEAR(spec.eigenvalues(0), 0.25, 1e-15);
    EXPECT_NEAR(spec.eigenvalues(1), 0.75, 1e-15);
    // the unitary is a permutation up to phases
    EXPECT_NEAR(spec.unitary.cwiseAbs().sum(), 2.0, 1e-12);
}

TEST(SpectralDecompose, PauliX) {
    const auto spec = qig::spectral_decompose(herm(oracle::pauli_x()));
    EXPECT_NEAR(spec.eigenvalues(0), -1.0, 1e-14);
    EXPECT_NEAR(spec.eigenvalues(1), 1.0, 1e-14);
    const double r = 1.0 / std::sqrt(2.0);
    // columns up to phase
    EXPECT_NEAR(std::abs(spec.unitary(0, 0)), r, 1e-14);
    EXPECT_NEAR(std::abs(spec.unitary(0, 0) + spec.unitary(1, 0)), 0.0,
                1e-14);
    EXPECT_NEAR(std::abs(spec.unitary(0, 1) - spec.unitary(1, 1)), 0.0,
                1e-14);
}

TEST(SpectralDecompose, RandomReconstruction) {
    qig::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = qig::random_hermitian(rng, 4, 3.0);
        const auto spec = qig::spectral_decompose(a);
        const Matrix rec = spec.unitary *
                           spec.eigenvalues.cast<qig::Complex>().asDiagonal() *
                           spec.unitary.adjoint();
        EXPECT_LE((rec - a.matrix()).norm(), 1e-10);
        EXPECT_LE((spec.unitary.adjoint() * spec.unitary -
                   Matrix::Identity(4, 4))
                      .norm(),
                  1e-12);
        for (Eigen::Index i = 1; i < 4; ++i) {
            EXPECT_LE(spec.eigenvalues(i - 1), spec.eigenvalues(i));
        }
    }
}

TEST(SpectralDecompose, RejectsNonHermitian) {
    Matrix m(2, 2);
    m << 1, 2, 0, 1;
    EXPECT_THROW((void)qig::spectral_decompose(m), qig::SymmetryViolation);
    try {
        (void)HermitianOperator(m);
    } catch (const qig::SymmetryViolation &e) {
        EXPECT_GT(e.deviation(), 1.0);
    }
}

TEST(ApplyScalarFunction, Identity) {
    qig::Rng rng(3);
    const auto a = qig::random_hermitian(rng, 3, 1.0);
    const auto out =
        qig::apply_scalar_function(qig::spectral_decompose(a), qig::fn::identity());
    EXPECT_LE((out.matrix() - a.matrix()).norm(), 1e-13);
}

TEST(ApplyScalarFunction, SqrtOfDiagonal) {
    const auto out = qig::apply_scalar_function(
        qig::spectral_decompose(herm(oracle::diag({4, 9}))), qig::fn::sqrt());
    EXPECT_LE((out.matrix() - oracle::diag({2, 3})).norm(), 1e-14);
}

TEST(ApplyScalarFunction, LogOfMaximallyMixed) {
    const auto out = qig::apply_scalar_function(
        qig::spectral_decompose(herm(oracle::diag({0.5, 0.5}))), qig::fn::log());
    EXPECT_LE((out.matrix() + std::log(2.0) * Matrix::Identity(2, 2)).norm(),
              1e-14);
}

TEST(ApplyScalarFunction, AgreesWithSchurOracle) {
    qig::Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = qig::random_state(rng, 3);
        const auto spec = qig::spectral_decompose(rho.matrix());
        EXPECT_LE((qig::apply_scalar_function(spec, qig::fn::log()).matrix() -
                   oracle::mat_log(rho.matrix().matrix()))
                      .norm(),
                  1e-10);
        EXPECT_LE(
            (qig::apply_scalar_function(spec, qig::fn::power(0.3)).matrix() -
             oracle::mat_pow(rho.matrix().matrix(), 0.3))
                .norm(),
            1e-10);
    }
}

TEST(ApplyScalarFunction, DomainErrorNamesEigenvalue) {
    const auto spec = qig::spectral_decompose(herm(oracle::diag({0.0, 1.0})));
    try {
        (void)qig::apply_scalar_function(spec, qig::fn::log());
        FAIL() << "expected DomainError";
    } catch (const qig::DomainError &e) {
        EXPECT_EQ(e.argument(), 0.0);
    }
}

TEST(DividedDifference, Values) {
    EXPECT_NEAR(qig::divided_difference(qig::fn::log(), 0.75, 0.25),
                2.0 * std::log(3.0), 1e-14);
    EXPECT_NEAR(qig::divided_difference(qig::fn::log(), 0.5, 0.5), 2.0,
                1e-14);
    // within the degeneracy threshold the derivative at the midpoint is used
    EXPECT_NEAR(qig::divided_difference(qig::fn::log(), 0.5, 0.5 + 1e-12),
                1.0 / (0.5 + 5e-13), 1e-12);
    EXPECT_NEAR(qig::divided_difference(qig::fn::square(), 2.0, 5.0), 7.0,
                1e-14);
    // second divided difference of t^2 is 1 everywhere
    EXPECT_NEAR(qig::divided_difference(qig::fn::square(), 1.0, 2.0, 4.0),
                1.0, 1e-14);
    EXPECT_NEAR(qig::divided_difference(qig::fn::square(), 1.0, 1.0, 1.0),
                1.0, 1e-14);
}

TEST(FrechetDerivative, IdentityIsDirection) {
    qig::Rng rng(8);
    const auto a = qig::random_hermitian(rng, 3, 1.0);
    const auto d = qig::random_hermitian(rng, 3, 1.0);
    const auto out = qig::frechet_derivative(qig::spectral_decompose(a), d,
                                             qig::fn::identity());
    EXPECT_LE((out.matrix() - d.matrix()).norm(), 1e-13);
}

TEST(FrechetDerivative, LogOffDiagonal) {
    const auto out = qig::frechet_derivative(
        qig::spectral_decompose(herm(oracle::diag({0.75, 0.25}))),
        herm(oracle::pauli_x()), qig::fn::log());
    EXPECT_NEAR(out.matrix()(0, 1).real(), 2.0 * std::log(3.0), 1e-13);
    EXPECT_NEAR(out.matrix()(1, 0).real(), 2.0 * std::log(3.0), 1e-13);
    EXPECT_NEAR(std::abs(out.matrix()(0, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(out.matrix()(1, 1)), 0.0, 1e-14);
}

TEST(FrechetDerivative, SquareIsProductRule) {
    qig::Rng rng(9);
    const auto a = qig::random_hermitian(rng, 4, 2.0);
    const auto d = qig::random_hermitian(rng, 4, 1.0);
    const auto out = qig::frechet_derivative(qig::spectral_decompose(a), d,
                                             qig::fn::square());
    const Matrix expected =
        a.matrix() * d.matrix() + d.matrix() * a.matrix();
    EXPECT_LE((out.matrix() - expected).norm(), 1e-12);
}

TEST(FrechetDerivative, MatchesCentralDifference) {
    qig::Rng rng(13);
    const std::vector<std::pair<qig::ScalarFunction,
                                std::function<Matrix(const Matrix &)>>>
        cases = {
            {qig::fn::log(), oracle::mat_log},
            {qig::fn::sqrt(), oracle::mat_sqrt},
            {qig::fn::power(0.7),
             [](const Matrix &m) { return oracle::mat_pow(m, 0.7); }},
            {qig::fn::exp(), oracle::mat_exp},
        };
    for (int trial = 0; trial < 5; ++trial) {
        const auto rho = qig::random_state(rng, 3);
        const auto d = qig::random_hermitian(rng, 3, 0.1);
        for (const auto &[f, oracle_f] : cases) {
            const auto out = qig::frechet_derivative(
                qig::spectral_decompose(rho.matrix()), d, f);
            const Matrix fd = oracle::fd_directional(
                oracle_f, rho.matrix().matrix(), d.matrix(), 1e-5);
            EXPECT_LE((out.matrix() - fd).norm(), 1e-6) << f.name;
        }
    }
}

TEST(SecondFrechetDerivative, MatchesFiniteDifference) {
    qig::Rng rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rho = qig::random_state(rng, 3);
        const auto e = qig::random_hermitian(rng, 3, 0.1);
        const auto g = qig::random_hermitian(rng, 3, 0.1);
        const auto spec = qig::spectral_decompose(rho.matrix());
        const auto second =
            qig::second_frechet_derivative(spec, e, g, qig::fn::log());
        // derivative along g of the first derivative along e
        const double h = 1e-4;
        auto first_at = [&](double s) {
            return qig::frechet_derivative(
                       qig::spectral_decompose(rho.matrix() + s * g), e,
                       qig::fn::log())
                .matrix();
        };
        const Matrix fd = (first_at(h) - first_at(-h)) / (2.0 * h);
        EXPECT_LE((second.matrix() - fd).norm(), 1e-6);
    }
}

TEST(HsInner, Examples) {
    const Matrix i2 = Matrix::Identity(2, 2);
    EXPECT_NEAR(std::abs(qig::hs_inner(i2, i2) - qig::Complex(2.0)), 0.0,
                1e-15);
    EXPECT_NEAR(std::abs(qig::hs_inner(oracle::pauli_x(), oracle::pauli_y())),
                0.0, 1e-15);
    EXPECT_NEAR(std::abs(qig::hs_inner(oracle::pauli_x(), oracle::pauli_x()) -
                         qig::Complex(2.0)),
                0.0, 1e-15);
    EXPECT_THROW((void)qig::hs_inner(i2, Matrix::Identity(3, 3)),
                 qig::DimensionMismatch);
}

TEST(CommutantSplit, CommutingDirection) {
    const auto spec = qig::spectral_decompose(herm(oracle::diag({0.75, 0.25})));
    const auto split = qig::commutant_split(spec, herm(oracle::diag({1, -1})));
    EXPECT_LE((split.commutant_part.matrix() - oracle::diag({1, -1})).norm(),
              1e-14);
    EXPECT_LE(split.delta.norm(), 1e-14);
}

TEST(CommutantSplit, OffDiagonalDirection) {
    const auto spec = qig::spectral_decompose(herm(oracle::diag({0.75, 0.25})));
    const auto split = qig::commutant_split(spec, herm(oracle::pauli_x()));
    EXPECT_LE(split.commutant_part.norm(), 1e-14);
    EXPECT_NEAR(split.delta(0, 1).real(), 2.0, 1e-13);
    EXPECT_NEAR(split.delta(1, 0).real(), -2.0, 1e-13);
}

TEST(CommutantSplit, ScalarBase) {
    qig::Rng rng(4);
    const auto d = qig::random_hermitian(rng, 2, 1.0);
    const auto split = qig::commutant_split(
        qig::spectral_decompose(herm(oracle::diag({0.5, 0.5}))), d);
    EXPECT_LE((split.commutant_part.matrix() - d.matrix()).norm(), 1e-14);
    EXPECT_LE(split.delta.norm(), 1e-14);
}

TEST(CommutantSplit, PropertiesOnRandomInputs) {
    qig::Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 2 + trial % 4;
        const auto rho = qig::random_state(rng, n);
        const auto d = qig::random_hermitian(rng, n, 1.0);
        const Matrix &s = rho.matrix().matrix();
        const auto split =
            qig::commutant_split(qig::spectral_decompose(rho.matrix()), d);
        const Matrix orth = qig::commutator(s, split.delta);
        EXPECT_LE((split.commutant_part.matrix() + orth - d.matrix()).norm(),
                  1e-9);
        EXPECT_LE(std::abs(qig::hs_inner(split.commutant_part.matrix(), orth)),
                  1e-9);
        EXPECT_LE(qig::commutator(s, split.commutant_part.matrix()).norm(),
                  1e-9);
        EXPECT_LE((split.delta.adjoint() + split.delta).norm(), 1e-12);
    }
}

TEST(CommutantSplit, ChainRuleConsistency) {
    qig::Rng rng(19);
    const std::vector<qig::ScalarFunction> fs = {
        qig::fn::log(), qig::fn::sqrt(), qig::fn::power(0.3),
        qig::fn::power(1.7)};
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = qig::random_state(rng, 3);
        const auto d = qig::random_hermitian(rng, 3, 1.0);
        const auto spec = qig::spectral_decompose(rho.matrix());
        const auto split = qig::commutant_split(spec, d);
        for (const auto &f : fs) {
            const auto df = qig::frechet_derivative(spec, d, f);
            const auto fsig = qig::apply_scalar_function(spec, f);
            // commutant part: f' applied on eigenvalue blocks
            Matrix ce = spec.to_eigenbasis(split.commutant_part.matrix());
            for (Eigen::Index i = 0; i < ce.rows(); ++i) {
                ce(i, i) *= f.d1(spec.eigenvalues(i));
            }
            const Matrix expected = spec.from_eigenbasis(ce) +
                                    qig::commutator(fsig.matrix(), split.delta);
            EXPECT_LE((df.matrix() - expected).norm(), 1e-8) << f.name;
        }
    }
}

TEST(CommutantSplit, NearDegenerateDoesNotCrash) {
    const auto spec =
        qig::spectral_decompose(herm(oracle::diag({0.5, 0.5 + 1e-13})));
    const auto split = qig::commutant_split(spec, herm(oracle::pauli_x()));
    EXPECT_TRUE(split.delta.allFinite());
    EXPECT_LE((split.commutant_part.matrix() - oracle::pauli_x()).norm(),
              1e-12);
}

TEST(HermitianOperator, ArithmeticAndSymmetrize) {
    Matrix m(2, 2);
    m << 1, qig::Complex(0, 1), 0, 2;
    const auto s = HermitianOperator::symmetrized(m);
    EXPECT_LE(qig::hermiticity_deviation(s.matrix()), 0.0);
    const auto sum = 2.0 * HermitianOperator::identity(2) -
                     HermitianOperator::zero(2);
    EXPECT_NEAR(sum.trace(), 4.0, 1e-15);
}

} // namespace
