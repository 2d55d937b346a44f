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

#include "qig/random.hpp"

#include <cmath>

#include "qig/error.hpp"

namespace qig {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int Rng::uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

namespace {

Matrix ginibre(Rng &rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            g(i, j) = rng.complex_normal();
        }
    }
    return g;
}

// Q factor with the phases of diag(R) removed, so the result is Haar.
Matrix haar_columns(Rng &rng, Eigen::Index rows, Eigen::Index cols) {
    const Matrix g = ginibre(rng, rows, cols);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix r = qr.matrixQR();
    for (Eigen::Index j = 0; j < cols; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0) {
            q.col(j) *= d / a;
        }
    }
    return q;
}

} // namespace

HermitianOperator random_hermitian(Rng &rng, Eigen::Index n, double scale) {
    const Matrix g = ginibre(rng, n, n);
    Matrix h = (g + g.adjoint()) / 2.0;
    h *= scale / h.norm();
    return HermitianOperator::symmetrized(h);
}

HermitianOperator random_traceless(Rng &rng, Eigen::Index n, double scale) {
    if (n < 2) {
        throw ParameterError("random_traceless: need n >= 2");
    }
    const Matrix g = ginibre(rng, n, n);
    Matrix h = (g + g.adjoint()) / 2.0;
    h -= (h.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
    h *= scale / h.norm();
    return HermitianOperator::symmetrized(h);
}

Matrix random_unitary(Rng &rng, Eigen::Index n) {
    return haar_columns(rng, n, n);
}

StateMatrix random_state(Rng &rng, Eigen::Index n, double floor) {
    if (!(floor >= 0.0) || floor * static_cast<double>(n) >= 1.0) {
        throw ParameterError("random_state: floor too large for dimension");
    }
    RealVector p(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        p(i) = -std::log(1.0 - rng.uniform(0.0, 1.0));
    }
    p /= p.sum();
    p = floor * RealVector::Ones(n) + (1.0 - floor * static_cast<double>(n)) * p;
    const Matrix u = random_unitary(rng, n);
    Matrix rho = u * p.cast<Complex>().asDiagonal() * u.adjoint();
    // renormalise so the trace is exact to roundoff
    rho /= rho.trace().real();
    return StateMatrix(HermitianOperator::symmetrized(rho));
}

WeightMatrix random_weight(Rng &rng, Eigen::Index n, double floor) {
    const StateMatrix rho = random_state(rng, n, floor);
    const double c = rng.uniform(0.5, 2.0);
    return WeightMatrix(c * rho.matrix());
}

TangentVector random_tangent(Rng &rng, const StateMatrix &rho) {
    return {rho, random_traceless(rng, rho.dim())};
}

KrausChannel random_channel(Rng &rng, Eigen::Index n_in, Eigen::Index n_out,
                            int kraus_count) {
    if (kraus_count < 1 || n_out * kraus_count < n_in) {
        throw ParameterError(
            "random_channel: n_out * kraus_count must be at least n_in");
    }
    const Matrix v = haar_columns(rng, n_out * kraus_count, n_in);
    std::vector<Matrix> ops;
    ops.reserve(static_cast<std::size_t>(kraus_count));
    for (int k = 0; k < kraus_count; ++k) {
        ops.emplace_back(v.middleRows(k * n_out, n_out));
    }
    return KrausChannel(std::move(ops));
}

} // namespace qig
