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

#pragma once

#include <stdexcept>
#include <string>

namespace qig {

/// Input matrix is not self-adjoint. `deviation` is max |A_ij - conj(A_ji)|.
class SymmetryViolation : public std::invalid_argument {
  public:
    SymmetryViolation(const std::string &what, double deviation)
        : std::invalid_argument(what), deviation_(deviation) {}
    [[nodiscard]] double deviation() const noexcept { return deviation_; }

  private:
    double deviation_;
};

/// A scalar function was evaluated outside its domain.
class DomainError : public std::domain_error {
  public:
    DomainError(const std::string &what, double argument)
        : std::domain_error(what), argument_(argument) {}
    [[nodiscard]] double argument() const noexcept { return argument_; }

  private:
    double argument_;
};

/// Out-of-range parameter (alpha, p, step sizes, indices).
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Matrix is not strictly positive definite (or not unit trace for states).
class NotPositiveDefinite : public std::domain_error {
  public:
    NotPositiveDefinite(const std::string &what, double min_eigenvalue)
        : std::domain_error(what), min_eigenvalue_(min_eigenvalue) {}
    [[nodiscard]] double min_eigenvalue() const noexcept {
        return min_eigenvalue_;
    }

  private:
    double min_eigenvalue_;
};

/// Chart evaluation failed; the message carries the offending parameters.
class ChartError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A discretisation (finite-difference stencil, transport step) could not
/// be carried out within the parameter domain.
class DiscretizationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qig
