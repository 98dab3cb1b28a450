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

#include <cstdint>
#include <optional>
#include <vector>

#include "ldp/channels.hpp"
#include "ldp/distribution.hpp"
#include "ldp/extended_real.hpp"

namespace ldp {

/// Outcome of one inequality check lhs <= rhs (+ slack tolerance).
struct ContractionReport {
  double lhs = 0;
  ExtendedReal rhs = 0.0;
  bool holds = false;
  ExtendedReal epsilon_used = 0.0;
  std::uint64_t seed = 0;

  /// rhs - lhs; +infinity when rhs is the marker.
  double slack() const { return rhs.is_infinite() ? rhs.as_double() : rhs.value() - lhs; }
};

/// f_k divergence of the channel outputs against (2 eps)^k tv^k, with
/// eps = verify_fk(ch, k).
ContractionReport check_fk_contraction(const FiniteChannel& ch, const DiscreteDistribution& p0,
                                       const DiscreteDistribution& p1, double k, std::uint64_t seed = 0);

struct TensorizationReport {
  ContractionReport chi;  // chi^2(M0^n || M1^n) vs prod(1 + 4 eps^2 tv_i^2) - 1
  ContractionReport kl;   // KL(M0^n || M1^n) vs sum log(1 + 4 eps^2 tv_i^2)
  std::size_t joint_atoms = 0;
};

/// Brute-force check over the joint output space of a non-interactive
/// product channel. eps^2 is the largest verify_chi2 over coordinates.
TensorizationReport check_tensorized_chi(const std::vector<FiniteChannel>& channels,
                                         const std::vector<DiscreteDistribution>& p0,
                                         const std::vector<DiscreteDistribution>& p1, std::uint64_t seed = 0);

struct KlTensorBound {
  double tight = 0;  // sum log(1 + 4 eps^2 tv_i^2)
  double loose = 0;  // 4 eps^2 sum tv_i^2
};

KlTensorBound kl_tensor_bound(double epsilon2, const std::vector<double>& tv);

struct PackingFamily {
  DiscreteDistribution base;
  std::vector<DiscreteDistribution> members;
};

/// Largest eigenvalue of the |V| x |V| Gram matrix (1/|V|) a_v . a_w with
/// a_v(x) = (p0(x) - p_v(x)) / sqrt(pstar(x)). This is the inner supremum
/// of the order-2 complexity at a fixed reference `pstar`.
double complexity_c2(const PackingFamily& fam, const DiscreteDistribution& pstar);
/// complexity_c2 at pstar = base.
double complexity_c2(const PackingFamily& fam);

/// Order-infinity complexity, sup over |f| <= 1 on the support of `pstar`,
/// by enumerating the sign vertices. Throws std::length_error above 20 atoms.
double complexity_cinf(const PackingFamily& fam, const DiscreteDistribution& pstar);

enum class PrivacyMode { kDp, kChi2 };

/// KL bound between the null and mixture private marginals.
/// kDp: `privacy` is eps; n (e^{eps/2} - e^{-eps/2})^2 / 4 * Cinf * min{e^eps, max_v ||dP/dP_v||_inf}.
/// kChi2: `privacy` is eps^2; n eps^2 C2 max_v ||dP_v/dP||_inf.
/// The complexity is evaluated at `pstar` (default: the base).
ExtendedReal big_tensor_bound(const PackingFamily& fam, double n, PrivacyMode mode, double privacy,
                              const DiscreteDistribution& reference,
                              const std::optional<DiscreteDistribution>& pstar = std::nullopt);

/// P0 uniform on {-1,1}^d, P_v(x) = 2^-d (1 + delta v'x) for v in {+-e_j}.
PackingFamily hypercube_packing(int d, double delta);

/// One-sparse logistic packing on atoms (x, y), x uniform on {-1,1}^d:
/// p_v(y|x) = 1 / (1 + exp(-y (theta0 + delta v'x))), v in {+-e_j}.
PackingFamily sparse_logistic_packing(int d, double theta0, double delta);

/// 2 max{(alpha - beta)^2 / d, (alpha + beta)^2} with
/// alpha = e^t/(e^t+1) - e^t/(e^t+e^-delta), beta = e^t/(e^t+1) - e^t/(e^t+e^delta).
double sparse_logistic_complexity_bound(int d, double theta0, double delta);

}  // namespace ldp
