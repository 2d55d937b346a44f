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

// Independent reference computations for the tests. Matrix functions come
// from Eigen's Schur-based MatrixFunctions module, not from the library's
// eigendecomposition route.
#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qig::oracle {

using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

inline Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline Mat pauli_y() {
    Mat m(2, 2);
    m << 0, cd(0, -1), cd(0, 1), 0;
    return m;
}
inline Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
inline Mat diag(std::initializer_list<double> d) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) {
        v(i++) = x;
    }
    return v.cast<cd>().asDiagonal();
}

inline Mat mat_sqrt(const Mat &a) { return a.sqrt(); }
inline Mat mat_log(const Mat &a) { return a.log(); }
inline Mat mat_exp(const Mat &a) { return a.exp(); }
inline Mat mat_pow(const Mat &a, double p) { return a.pow(p); }

/// l_alpha through Eigen's matrix functions.
inline Mat embedding(const Mat &a, double alpha) {
    if (alpha == -1.0) {
        return a;
    }
    if (alpha == 1.0) {
        return a.log();
    }
    return (2.0 / (1.0 - alpha)) * a.pow((1.0 - alpha) / 2.0);
}

/// (F(A + hD) - F(A - hD)) / 2h.
inline Mat fd_directional(const std::function<Mat(const Mat &)> &f,
                          const Mat &a, const Mat &d, double h = 1e-5) {
    return (f(a + h * d) - f(a - h * d)) / (2.0 * h);
}

/// Direct partial trace over the second tensor factor.
inline Mat partial_trace_second(const Mat &x, Eigen::Index da,
                                Eigen::Index db) {
    Mat out = Mat::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            for (Eigen::Index k = 0; k < db; ++k) {
                out(i, j) += x(i * db + k, j * db + k);
            }
        }
    }
    return out;
}

/// Tr(A^dagger B).
inline cd hs(const Mat &a, const Mat &b) { return (a.adjoint() * b).trace(); }

/// Classical Fisher information sum a_i b_i / p_i.
inline double fisher(const Eigen::VectorXd &p, const Eigen::VectorXd &a,
                     const Eigen::VectorXd &b) {
    return (a.array() * b.array() / p.array()).sum();
}

inline double max_abs(const Mat &m) { return m.cwiseAbs().maxCoeff(); }

} // namespace qig::oracle
