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
#include <vector>

#include "ldp/distribution.hpp"
#include "ldp/extended_real.hpp"
#include "ldp/rng.hpp"

namespace ldp {

/// Row-stochastic kernel K(z|x); rows index inputs, columns index outputs.
class FiniteChannel {
 public:
  FiniteChannel(std::vector<Atom> inputs, std::vector<Atom> outputs, Eigen::MatrixXd kernel);

  static FiniteChannel identity(const std::vector<Atom>& atoms);
  /// Every input maps to the same output law.
  static FiniteChannel constant(const std::vector<Atom>& inputs, const DiscreteDistribution& row);

  const std::vector<Atom>& inputs() const { return inputs_; }
  const std::vector<Atom>& outputs() const { return outputs_; }
  const Eigen::MatrixXd& kernel() const { return kernel_; }

 private:
  std::vector<Atom> inputs_;
  std::vector<Atom> outputs_;
  Eigen::MatrixXd kernel_;
};

/// Independent coordinate-wise channel on product atoms "(a,b)", matching
/// `product()` on distributions.
FiniteChannel product(const FiniteChannel& a, const FiniteChannel& b);

/// Tightest epsilon for local differential privacy: the max over outputs and
/// input pairs of log K(z|x)/K(z|x'). A zero entry with a nonzero sibling in
/// the same column gives +infinity.
ExtendedReal verify_ldp(const FiniteChannel& ch);
/// Max over input pairs of the Renyi divergence of order alpha between rows.
ExtendedReal verify_renyi(const FiniteChannel& ch, double alpha);
/// (max pairwise f_k divergence between rows)^(1/k).
ExtendedReal verify_fk(const FiniteChannel& ch, double k);
/// Max pairwise chi-square divergence between rows (an epsilon^2).
ExtendedReal verify_chi2(const FiniteChannel& ch);

DiscreteDistribution push_forward(const DiscreteDistribution& p, const FiniteChannel& ch);

/// Binary randomized response: keep the bit with probability e^eps/(e^eps+1).
FiniteChannel rr_two_point_channel(double epsilon);

struct RandomizedResponseBit {
  double epsilon;
  /// Debiased output is conditionally unbiased for the input bit; raw output
  /// is the flipped bit itself.
  bool debiased = true;

  /// Flip probability 1/(e^eps+1); zero at eps = +inf.
  double flip_probability() const;
  /// Conditional variance e^eps/(e^eps-1)^2 of the debiased output.
  double debiased_variance() const;
};

double rr_privatize(int bit, const RandomizedResponseBit& mech, RngStream& rng);

/// Coordinate-wise Laplace noise for inputs in the l-infinity ball of radius
/// `bound`. The l1 sensitivity is 2 * bound * dim, so scale 2 r d / eps gives
/// epsilon-LDP.
struct LaplaceVectorMechanism {
  double epsilon;
  double bound;
  int dim;

  double scale() const;
  /// Per-coordinate noise variance 2 b^2.
  double noise_variance() const;
};

Eigen::VectorXd laplace_privatize(const Eigen::VectorXd& x, const LaplaceVectorMechanism& mech, RngStream& rng);

/// log p(z|x) - log p(z|x') for a product Laplace density of scale `scale`.
double laplace_log_ratio(const Eigen::VectorXd& z, const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime,
                         double scale);
/// Supremum over z of laplace_log_ratio, attained analytically: ||x - x'||_1 / scale.
double laplace_max_log_ratio(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime, double scale);

struct LaplaceAudit {
  double worst_log_ratio = 0;  // sup over audited input pairs
  double epsilon = 0;
  bool passed = false;
};

/// Analytic privacy audit over the ball corners (the extreme pairs) plus
/// `random_pairs` random admissible pairs, and a random z probe of each.
LaplaceAudit audit_laplace(const LaplaceVectorMechanism& mech, RngStream& rng, int random_pairs = 100);

FiniteChannel random_channel(int n_inputs, int n_outputs, RngStream& rng, double zero_probability = 0.0);
DiscreteDistribution random_distribution(int size, RngStream& rng, double zero_probability = 0.0);

}  // namespace ldp
