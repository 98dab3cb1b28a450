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

#include "ldp/distribution.hpp"

#include <cmath>
#include <stdexcept>

#include "ldp/constants.hpp"

namespace ldp {

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> support, Eigen::VectorXd mass)
    : support_(std::move(support)), mass_(std::move(mass)) {
  if (static_cast<Eigen::Index>(support_.size()) != mass_.size())
    throw std::invalid_argument("DiscreteDistribution: support and mass lengths differ");
  if (support_.empty()) throw std::invalid_argument("DiscreteDistribution: empty support");
  for (Eigen::Index i = 0; i < mass_.size(); ++i) {
    if (!std::isfinite(mass_(i)) || mass_(i) < 0)
      throw std::invalid_argument("DiscreteDistribution: negative or non-finite mass");
  }
  double total = mass_.sum();
  if (std::fabs(total - 1.0) > constants::kNormalizationTol)
    throw std::invalid_argument("DiscreteDistribution: masses sum to " + std::to_string(total));
  mass_ /= total;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!index_.emplace(support_[i], static_cast<long>(i)).second)
      throw std::invalid_argument("DiscreteDistribution: duplicate atom '" + support_[i] + "'");
  }
}

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> support, const std::vector<double>& mass)
    : DiscreteDistribution(std::move(support),
                           Eigen::Map<const Eigen::VectorXd>(mass.data(), static_cast<Eigen::Index>(mass.size()))) {}

DiscreteDistribution DiscreteDistribution::bernoulli(double p) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("bernoulli: p outside [0,1]");
  return DiscreteDistribution({"0", "1"}, Eigen::Vector2d(1 - p, p));
}

DiscreteDistribution DiscreteDistribution::point_mass(const Atom& atom) {
  return DiscreteDistribution({atom}, Eigen::VectorXd::Ones(1));
}

DiscreteDistribution DiscreteDistribution::uniform(std::vector<Atom> support) {
  const auto k = static_cast<Eigen::Index>(support.size());
  return DiscreteDistribution(std::move(support), Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k)));
}

DiscreteDistribution DiscreteDistribution::from_masses(const Eigen::VectorXd& mass) {
  std::vector<Atom> support;
  for (Eigen::Index i = 0; i < mass.size(); ++i) support.push_back(std::to_string(i));
  return DiscreteDistribution(std::move(support), mass);
}

double DiscreteDistribution::mass_of(const Atom& atom) const {
  auto it = index_.find(atom);
  return it == index_.end() ? 0.0 : mass_(it->second);
}

long DiscreteDistribution::index_of(const Atom& atom) const {
  auto it = index_.find(atom);
  return it == index_.end() ? -1 : it->second;
}

Aligned align(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  Aligned out;
  out.support = p.support();
  for (const Atom& a : q.support())
    if (p.index_of(a) < 0) out.support.push_back(a);
  out.p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out.support.size()));
  out.q = out.p;
  out.p.head(p.mass().size()) = p.mass();
  for (std::size_t i = 0; i < out.support.size(); ++i) out.q(static_cast<Eigen::Index>(i)) = q.mass_of(out.support[i]);
  return out;
}

Eigen::VectorXd mass_on(const DiscreteDistribution& p, const std::vector<Atom>& support) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(support.size()));
  double placed = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = p.mass_of(support[i]);
    placed += out(static_cast<Eigen::Index>(i));
  }
  if (std::fabs(placed - 1.0) > constants::kNormalizationTol)
    throw std::invalid_argument("mass_on: distribution has mass outside the target support");
  return out;
}

std::vector<Atom> union_support(const std::vector<DiscreteDistribution>& ps) {
  std::vector<Atom> out;
  std::unordered_map<Atom, int> seen;
  for (const auto& p : ps)
    for (const Atom& a : p.support())
      if (seen.emplace(a, 0).second) out.push_back(a);
  return out;
}

DiscreteDistribution mixture(const std::vector<DiscreteDistribution>& ps, const std::vector<double>& weights) {
  if (ps.empty() || ps.size() != weights.size()) throw std::invalid_argument("mixture: component/weight mismatch");
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0)) throw std::invalid_argument("mixture: negative weight");
    total += w;
  }
  if (std::fabs(total - 1.0) > constants::kNormalizationTol)
    throw std::invalid_argument("mixture: weights do not sum to 1");
  std::vector<Atom> support = union_support(ps);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(support.size()));
  for (std::size_t j = 0; j < ps.size(); ++j) mass += weights[j] * mass_on(ps[j], support);
  return DiscreteDistribution(std::move(support), mass);
}

DiscreteDistribution product(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  std::vector<Atom> support;
  Eigen::VectorXd mass(p.mass().size() * q.mass().size());
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      support.push_back("(" + p.support()[i] + "," + q.support()[j] + ")");
      mass(k++) = p.mass()(static_cast<Eigen::Index>(i)) * q.mass()(static_cast<Eigen::Index>(j));
    }
  }
  return DiscreteDistribution(std::move(support), mass);
}

}  // namespace ldp
