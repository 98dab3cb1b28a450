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

#include "ldp/distribution.hpp"
#include "ldp/extended_real.hpp"

namespace ldp {

// Kernels on aligned mass vectors. `p` and `q` index the same atoms.
// Natural logarithms throughout.

template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar tv_distance(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedQ>& q) {
  return (p - q).cwiseAbs().sum() / 2;
}

template <typename DerivedP, typename DerivedQ>
BasicExtendedReal<typename DerivedP::Scalar> kl(const Eigen::MatrixBase<DerivedP>& p,
                                                const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) <= 0) continue;
    if (q(i) <= 0) return BasicExtendedReal<Scalar>::infinity();
    sum += p(i) * std::log(p(i) / q(i));
  }
  return sum < 0 ? Scalar(0) : sum;
}

template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar hellinger(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  Scalar h2 = (p.cwiseSqrt() - q.cwiseSqrt()).squaredNorm() / 2;
  return std::sqrt(std::min(h2, Scalar(1)));
}

/// Sum over atoms of |p/q - 1|^k q.
template <typename DerivedP, typename DerivedQ>
BasicExtendedReal<typename DerivedP::Scalar> fk_divergence(const Eigen::MatrixBase<DerivedP>& p,
                                                           const Eigen::MatrixBase<DerivedQ>& q,
                                                           typename DerivedP::Scalar k) {
  using Scalar = typename DerivedP::Scalar;
  if (!(k > 1)) throw std::invalid_argument("fk_divergence: k must exceed 1");
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (q(i) <= 0) {
      if (p(i) > 0) return BasicExtendedReal<Scalar>::infinity();
      continue;
    }
    sum += std::pow(std::abs(p(i) / q(i) - 1), k) * q(i);
  }
  return sum;
}

template <typename DerivedP, typename DerivedQ>
BasicExtendedReal<typename DerivedP::Scalar> chi_square(const Eigen::MatrixBase<DerivedP>& p,
                                                        const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (q(i) <= 0) {
      if (p(i) > 0) return BasicExtendedReal<Scalar>::infinity();
      continue;
    }
    Scalar d = p(i) - q(i);
    sum += d * d / q(i);
  }
  return sum;
}

/// Chi-square affinity, chi_square + 1.
template <typename DerivedP, typename DerivedQ>
BasicExtendedReal<typename DerivedP::Scalar> chi_affinity(const Eigen::MatrixBase<DerivedP>& p,
                                                          const Eigen::MatrixBase<DerivedQ>& q) {
  auto c = chi_square(p, q);
  if (c.is_infinite()) return c;
  return c.value() + 1;
}

/// Renyi divergence of order alpha >= 1; alpha == 1 is KL.
template <typename DerivedP, typename DerivedQ>
BasicExtendedReal<typename DerivedP::Scalar> renyi(const Eigen::MatrixBase<DerivedP>& p,
                                                   const Eigen::MatrixBase<DerivedQ>& q,
                                                   typename DerivedP::Scalar alpha) {
  using Scalar = typename DerivedP::Scalar;
  if (!(alpha >= 1)) throw std::invalid_argument("renyi: alpha must be >= 1");
  if (alpha == 1) return kl(p, q);
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) <= 0) continue;
    if (q(i) <= 0) return BasicExtendedReal<Scalar>::infinity();
    sum += std::pow(p(i) / q(i), alpha) * q(i);
  }
  Scalar r = std::log(sum) / (alpha - 1);
  return r < 0 ? Scalar(0) : r;
}

// Distribution overloads: union-align with zero fill, then call the kernels.

double tv_distance(const DiscreteDistribution& p, const DiscreteDistribution& q);
ExtendedReal kl(const DiscreteDistribution& p, const DiscreteDistribution& q);
double hellinger(const DiscreteDistribution& p, const DiscreteDistribution& q);
ExtendedReal chi_square(const DiscreteDistribution& p, const DiscreteDistribution& q);
ExtendedReal chi_affinity(const DiscreteDistribution& p, const DiscreteDistribution& q);
ExtendedReal renyi(const DiscreteDistribution& p, const DiscreteDistribution& q, double alpha);
ExtendedReal fk_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q, double k);

}  // namespace ldp
