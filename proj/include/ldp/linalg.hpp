// Copyright 2026 The ldp-minimax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "ldp/constants.hpp"

namespace ldp {

template <typename Scalar>
struct PowerIterationResult {
  Scalar eigenvalue = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvector;
  int iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of a symmetric positive semidefinite matrix by power
/// iteration with a Rayleigh-quotient stopping rule.
///
/// The start vector is deterministic and deliberately not constant: for
/// symmetric packings the leading eigenvector is often orthogonal to ones.
template <typename Derived>
PowerIterationResult<typename Derived::Scalar> largest_eigenvalue(
    const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar rel_tol = constants::kPowerIterationRelTol,
    int max_iter = constants::kPowerIterationCap) {
  using Scalar = typename Derived::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("largest_eigenvalue: matrix not square");
  PowerIterationResult<Scalar> out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  Vec x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = Scalar(1) + Scalar(i + 1) / Scalar(n + 1) + std::sin(Scalar(7 * i + 3));
  x.normalize();
  Scalar lambda = x.dot(a * x);
  for (int it = 1; it <= max_iter; ++it) {
    Vec y = a * x;
    Scalar norm = y.norm();
    out.iterations = it;
    if (norm == Scalar(0)) {
      out.eigenvalue = 0;
      out.eigenvector = x;
      out.converged = true;
      return out;
    }
    x = y / norm;
    Scalar next = x.dot(a * x);
    if (std::abs(next - lambda) <= rel_tol * std::abs(next)) {
      out.eigenvalue = next;
      out.eigenvector = x;
      out.converged = true;
      return out;
    }
    lambda = next;
  }
  out.eigenvalue = lambda;
  out.eigenvector = x;
  return out;
}

}  // namespace ldp
