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
#include <string>
#include <unordered_map>
#include <vector>

namespace ldp {

using Atom = std::string;

/// Probability mass function over an explicit finite support.
///
/// Masses must be non-negative and sum to one within 1e-9; within tolerance
/// they are renormalized, otherwise construction throws. Atoms are opaque
/// identifiers compared by equality.
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<Atom> support, Eigen::VectorXd mass);
  DiscreteDistribution(std::vector<Atom> support, const std::vector<double>& mass);

  static DiscreteDistribution bernoulli(double p);
  static DiscreteDistribution point_mass(const Atom& atom);
  static DiscreteDistribution uniform(std::vector<Atom> support);
  /// Atoms named "0".."k-1".
  static DiscreteDistribution from_masses(const Eigen::VectorXd& mass);

  const std::vector<Atom>& support() const { return support_; }
  const Eigen::VectorXd& mass() const { return mass_; }
  std::size_t size() const { return support_.size(); }

  /// Mass of `atom`, zero when it is not in the support.
  double mass_of(const Atom& atom) const;
  /// Index of `atom`, or -1.
  long index_of(const Atom& atom) const;

 private:
  std::vector<Atom> support_;
  Eigen::VectorXd mass_;
  std::unordered_map<Atom, long> index_;
};

/// Two mass vectors on a common (union) support, zero-filled. Atoms of `p`
/// come first in their order, then atoms only in `q`.
struct Aligned {
  std::vector<Atom> support;
  Eigen::VectorXd p;
  Eigen::VectorXd q;
};

Aligned align(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// Mass vector of `p` laid out on `support`. Throws when `p` carries positive
/// mass on an atom missing from `support`.
Eigen::VectorXd mass_on(const DiscreteDistribution& p, const std::vector<Atom>& support);

/// Union of supports in first-seen order.
std::vector<Atom> union_support(const std::vector<DiscreteDistribution>& ps);

DiscreteDistribution mixture(const std::vector<DiscreteDistribution>& ps, const std::vector<double>& weights);

/// Independent product; atoms are "(a,b)".
DiscreteDistribution product(const DiscreteDistribution& p, const DiscreteDistribution& q);

}  // namespace ldp
