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

#include "qig/families.hpp"

#include <memory>

#include "qig/error.hpp"
#include "qig/random.hpp"

namespace qig {

namespace {

using cd = Complex;

struct SquaredLinear {
    Matrix a0;
    std::vector<Matrix> g;
    bool normalize;

    Matrix b(const RealVector &theta) const {
        Matrix m = a0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            m += theta(static_cast<Eigen::Index>(k)) * g[k];
        }
        return m;
    }
    static double tr(const Matrix &m) { return m.trace().real(); }

    Matrix value(const RealVector &theta) const {
        const Matrix bb = b(theta);
        Matrix s = bb * bb;
        return normalize ? Matrix(s / tr(s)) : s;
    }
    Matrix first(const RealVector &theta, int i) const {
        const Matrix bb = b(theta);
        const Matrix &gi = g[static_cast<std::size_t>(i)];
        const Matrix s = bb * bb;
        const Matrix si = gi * bb + bb * gi;
        if (!normalize) {
            return si;
        }
        const double t = tr(s);
        return si / t - s * (tr(si) / (t * t));
    }
    Matrix second(const RealVector &theta, int i, int j) const {
        const Matrix bb = b(theta);
        const Matrix &gi = g[static_cast<std::size_t>(i)];
        const Matrix &gj = g[static_cast<std::size_t>(j)];
        const Matrix s = bb * bb;
        const Matrix si = gi * bb + bb * gi;
        const Matrix sj = gj * bb + bb * gj;
        const Matrix sij = gi * gj + gj * gi;
        if (!normalize) {
            return sij;
        }
        const double t = tr(s);
        const double ti = tr(si);
        const double tj = tr(sj);
        const double tij = tr(sij);
        return sij / t - (si * tj + sj * ti) / (t * t) - s * (tij / (t * t)) +
               s * (2.0 * ti * tj / (t * t * t));
    }
};

HermitianOperator herm(std::initializer_list<std::initializer_list<cd>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    Eigen::Index i = 0;
    for (const auto &row : rows) {
        Eigen::Index j = 0;
        for (const cd &v : row) {
            m(i, j++) = v;
        }
        ++i;
    }
    return HermitianOperator(m);
}

} // namespace

ParametrizedFamily
squared_linear_family(std::string name, HermitianOperator a0,
                      std::vector<HermitianOperator> generators,
                      bool normalize) {
    if (generators.empty()) {
        throw ParameterError("squared_linear_family: no generators");
    }
    auto data = std::make_shared<SquaredLinear>();
    data->a0 = a0.matrix();
    data->normalize = normalize;
    for (const auto &g : generators) {
        if (g.dim() != a0.dim()) {
            throw DimensionMismatch("squared_linear_family: generator size");
        }
        data->g.push_back(g.matrix());
    }
    const int d = static_cast<int>(generators.size());
    return ParametrizedFamily(
               std::move(name), d,
               [data](const RealVector &t) { return data->value(t); },
               normalize)
        .with_analytic_derivatives(
            [data](const RealVector &t, int i) { return data->first(t, i); },
            [data](const RealVector &t, int i, int j) {
                return data->second(t, i, j);
            });
}

std::vector<HermitianOperator> pauli_matrices() {
    const cd i{0.0, 1.0};
    return {herm({{0, 1}, {1, 0}}), herm({{0, -i}, {i, 0}}),
            herm({{1, 0}, {0, -1}})};
}

namespace {

HermitianOperator qubit_a0() {
    return herm({{0.9, cd{0.2, -0.1}}, {cd{0.2, 0.1}, 0.6}});
}

HermitianOperator qutrit_a0() {
    return herm({{1.0, 0.1, cd{0.0, 0.05}},
                 {0.1, 0.8, 0.1},
                 {cd{0.0, -0.05}, 0.1, 0.6}});
}

std::vector<HermitianOperator> qutrit_generators() {
    const cd i{0.0, 1.0};
    return {herm({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}),
            herm({{0, 0, -i}, {0, 0, 0}, {i, 0, 0}}),
            herm({{0.5, 0, 0}, {0, 0, 0.5}, {0, 0.5, -0.5}})};
}

} // namespace

ParametrizedFamily qubit_state_family() {
    return squared_linear_family("qubit-state", qubit_a0(), pauli_matrices(),
                                 true);
}

ParametrizedFamily qutrit_state_family() {
    return squared_linear_family("qutrit-state", qutrit_a0(),
                                 qutrit_generators(), true);
}

ParametrizedFamily qubit_weight_family() {
    auto gens = pauli_matrices();
    gens.insert(gens.begin(), herm({{1.0, 0.0}, {0.0, 0.9}}));
    return squared_linear_family("qubit-weight", qubit_a0(), std::move(gens),
                                 false);
}

ParametrizedFamily qutrit_weight_family() {
    auto gens = qutrit_generators();
    gens[2] = HermitianOperator::identity(3);
    return squared_linear_family("qutrit-weight", qutrit_a0(), std::move(gens),
                                 false);
}

ParametrizedFamily bloch_family() {
    auto paulis = std::make_shared<std::vector<HermitianOperator>>(
        pauli_matrices());
    return ParametrizedFamily(
               "bloch", 3,
               [paulis](const RealVector &r) {
                   Matrix m = Matrix::Identity(2, 2);
                   for (int k = 0; k < 3; ++k) {
                       m += r(k) * (*paulis)[static_cast<std::size_t>(k)].matrix();
                   }
                   return Matrix(m / 2.0);
               },
               true)
        .with_analytic_derivatives(
            [paulis](const RealVector &, int i) {
                return Matrix((*paulis)[static_cast<std::size_t>(i)].matrix() /
                              2.0);
            },
            [](const RealVector &, int, int) {
                return Matrix(Matrix::Zero(2, 2));
            });
}

ParametrizedFamily diagonal_state_family(Eigen::Index n) {
    if (n < 2) {
        throw ParameterError("diagonal_state_family: need n >= 2");
    }
    // p0 is uneven so that no two probabilities coincide at theta = 0.
    RealVector p0(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        p0(k) = static_cast<double>(k + 1);
    }
    p0 /= p0.sum();
    const int d = static_cast<int>(n - 1);
    auto dir = [n](int k) {
        RealVector v = RealVector::Zero(n);
        v(k) = 0.5;
        v(k + 1) = -0.5;
        return v;
    };
    return ParametrizedFamily(
               "diagonal-state(N=" + std::to_string(n) + ")", d,
               [p0, d, dir](const RealVector &t) {
                   RealVector p = p0;
                   for (int k = 0; k < d; ++k) {
                       p += t(k) * dir(k);
                   }
                   return Matrix(p.cast<Complex>().asDiagonal());
               },
               true)
        .with_analytic_derivatives(
            [dir](const RealVector &, int i) {
                return Matrix(dir(i).cast<Complex>().asDiagonal());
            },
            [n](const RealVector &, int, int) {
                return Matrix(Matrix::Zero(n, n));
            });
}

std::vector<RealVector> seeded_grid(int param_dim, int count,
                                    std::uint64_t seed, double radius) {
    if (param_dim < 1 || count < 1 || !(radius > 0.0)) {
        throw ParameterError("seeded_grid: bad arguments");
    }
    Rng rng(seed);
    std::vector<RealVector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int c = 0; c < count; ++c) {
        RealVector t(param_dim);
        for (int k = 0; k < param_dim; ++k) {
            t(k) = rng.uniform(-radius, radius);
        }
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace qig
