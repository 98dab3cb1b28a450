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
#include <concepts>
#include <limits>
#include <string>
#include <vector>

#include "ldp/constants.hpp"
#include "ldp/errors.hpp"
#include "ldp/rng.hpp"

namespace ldp {

/// One-parameter exponential family p_theta(x) = exp(theta T(x) - A(theta)).
class ExpFamily1D {
 public:
  enum class Kind { kFinite, kGaussianLocation };

  /// T takes the values `t_values` with base weights `weights` (> 0).
  static ExpFamily1D finite(std::vector<double> t_values, std::vector<double> weights);
  /// N(theta, 1), T(x) = x.
  static ExpFamily1D gaussian_location();
  /// Bernoulli with natural parameter log(p / (1 - p)), T in {0, 1}.
  static ExpFamily1D bernoulli();
  /// Rademacher, T in {-1, 1}, A(theta) = log(e^theta + e^-theta).
  static ExpFamily1D rademacher();

  Kind kind() const { return kind_; }
  const std::vector<double>& t_values() const { return t_; }

  double log_partition(double theta) const;
  double mean(double theta) const;      // A'(theta)
  double variance(double theta) const;  // A''(theta)
  /// P_theta(T >= t).
  double psi(double t, double theta) const;
  /// d/dtheta psi(t, theta) = Cov_theta(1{T >= t}, T).
  double dpsi(double t, double theta) const;
  /// E_theta |T - A'(theta)|, the L1-information of the score.
  double l1_information(double theta) const;
  /// One draw of T(X) under theta.
  double sample(double theta, RngStream& rng) const;
  /// Clip level for the stage-one private mean: 6 for the Gaussian family,
  /// max |t| for finite families.
  double default_clip_bound() const;

 private:
  Kind kind_ = Kind::kGaussianLocation;
  std::vector<double> t_;
  std::vector<double> log_w_;

  // Tilted probabilities over t_.
  Eigen::VectorXd tilted(double theta) const;
};

/// Inverse H(p, t) = inf{theta : psi(t, theta) >= p}.
struct HInverse {
  enum class Range {
    kInterior,
    kBelow,     // every theta qualifies: H = -infinity
    kAbove,     // no theta qualifies: H = +infinity
    kExceeded,  // solution beyond the bracket cap |theta| <= 1e3
  };
  double theta = 0;  // +-infinity for kBelow / kAbove, +-cap for kExceeded
  Range range = Range::kInterior;
};

/// Bisection to an interval of width 1e-10 after geometric bracket growth
/// from [-1, 1], capped at |theta| = 1e3.
HInverse invert_h(const ExpFamily1D& fam, double p, double t);

std::string to_string(HInverse::Range r);

/// A convex log-partition function with value, gradient and Hessian.
template <typename F>
concept LogPartition = requires(const F& f, const Eigen::VectorXd& theta) {
  { f.dim() } -> std::convertible_to<int>;
  { f.value(theta) } -> std::convertible_to<double>;
  { f.gradient(theta) } -> std::convertible_to<Eigen::VectorXd>;
  { f.hessian(theta) } -> std::convertible_to<Eigen::MatrixXd>;
};

/// d-parameter exponential family on a finite set of sufficient-statistic
/// points (rows of `points`) with positive base weights.
class MultiExpFamily {
 public:
  MultiExpFamily(Eigen::MatrixXd points, Eigen::VectorXd weights);

  /// T uniform on {-1, 1}, A(theta) = log(e^theta + e^-theta) (up to a constant).
  static MultiExpFamily rademacher();

  int dim() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }
  double value(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& theta) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& theta) const;
  /// Tilted point probabilities at theta.
  Eigen::VectorXd probabilities(const Eigen::VectorXd& theta) const;

 private:
  Eigen::MatrixXd points_;
  Eigen::VectorXd log_weights_;
};

struct ConjugateSolve {
  Eigen::VectorXd theta;
  int iterations = 0;
};

/// Solves grad A(theta) = mu, i.e. theta = grad A*(mu), by damped Newton on
/// A(theta) - mu'theta with Armijo backtracking. Stops at gradient norm
/// 1e-10. Throws DomainError when the iterate leaves |theta| <= 1e3 or the
/// Hessian degenerates (mu on or beyond the boundary of the mean range), and
/// ConvergenceError after 200 iterations otherwise.
template <LogPartition F>
ConjugateSolve grad_astar(const F& fam, const Eigen::VectorXd& mu,
                          const Eigen::VectorXd& start = Eigen::VectorXd()) {
  const int d = fam.dim();
  if (mu.size() != d) throw std::invalid_argument("grad_astar: dimension mismatch");
  ConjugateSolve out;
  Eigen::VectorXd theta = start.size() == d ? start : Eigen::VectorXd::Zero(d);
  auto objective = [&](const Eigen::VectorXd& t) { return fam.value(t) - mu.dot(t); };
  double f = objective(theta);
  for (int it = 0; it < constants::kNewtonIterationCap; ++it) {
    Eigen::VectorXd g = fam.gradient(theta) - mu;
    out.iterations = it;
    if (!g.allFinite())
      throw DomainError("grad_astar: non-finite gradient; mean outside the interior of the mean range");
    Eigen::MatrixXd h = fam.hessian(theta);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    const double scale = std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 1e-14 * scale)
      throw DomainError("grad_astar: Hessian degenerate; mean outside the interior of the mean range");
    Eigen::VectorXd step = ldlt.solve(g);
    // A small gradient alone is not enough: toward a boundary face of the mean
    // range the gradient vanishes while the Newton step stays of order one.
    if (g.norm() <= constants::kNewtonGradTol && step.norm() <= constants::kNewtonStepTol) {
      out.theta = theta;
      return out;
    }
    double t = 1.0;
    const double slope = g.dot(step);
    Eigen::VectorXd next = theta - step;
    double f_next = objective(next);
    // Slack of a few ulps so the search does not stall on roundoff near the optimum.
    const double slack = 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f));
    while (!(f_next <= f - 1e-4 * t * slope + slack) && t > 1e-12) {
      t *= 0.5;
      next = theta - t * step;
      f_next = objective(next);
    }
    if (!std::isfinite(f_next) || !next.allFinite())
      throw DomainError("grad_astar: non-finite objective; mean outside the interior of the mean range");
    if (t <= 1e-12) {
      // Line search stalled. Accept only if already at the optimum.
      if (g.norm() <= constants::kNewtonGradTol) {
        out.theta = theta;
        return out;
      }
      throw DomainError("grad_astar: line search stalled; mean outside the interior of the mean range");
    }
    theta = next;
    f = f_next;
    if (theta.norm() > constants::kBracketCap)
      throw DomainError("grad_astar: iterate diverged; mean outside the interior of the mean range");
  }
  throw ConvergenceError("grad_astar: no convergence within the iteration cap");
}

}  // namespace ldp
