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
#include <functional>
#include <optional>
#include <vector>

#include "ldp/distribution.hpp"
#include "ldp/expfam.hpp"
#include "ldp/glm.hpp"
#include "ldp/rng.hpp"

namespace ldp {

struct RrBernoulliEstimate {
  double p_hat = 0;
  /// Plug-in m(1 - m) / (n (1 - 2q)^2) with m the observed flipped-bit mean.
  double analytic_variance = 0;
};

/// Randomized response on each bit, then the debiased mean (Zbar - q) / (1 - 2q),
/// q = 1/(e^eps + 1).
RrBernoulliEstimate rr_bernoulli_estimate(const std::vector<int>& bits, double epsilon, RngStream& rng);

/// m(1 - m) / (n (1 - 2q)^2) with m = q + p (1 - 2q).
double rr_bernoulli_variance(double p, double epsilon, double n);

struct TwoPointResult {
  double theta = 0;
  /// exp(-n delta_eps^2 tv^2 / 2), the Hoeffding bound on either error.
  double error_bound = 1;
  bool degenerate = false;
  double k_n = 0;
  double threshold = 0;
};

/// Private test between P0 and P1 on the acceptance set A = {x : p0(x) > p1(x)}.
/// Each 1{X_i in A} goes through binary randomized response and K_n is the
/// debiased mean of the responses, so E_a[K_n] = P_a(A). Returns theta0 iff
/// K_n >= (P0(A) + P1(A)) / 2.
TwoPointResult two_point_test(const std::vector<Atom>& sample, const DiscreteDistribution& p0,
                              const DiscreteDistribution& p1, double theta0, double theta1, double epsilon,
                              RngStream& rng);

struct ExpFamOneStep {
  double theta_hat = 0;
  double t_hat = 0;  // stage-one private estimate of E[T]
  double z_bar = 0;  // stage-two debiased response mean
  HInverse::Range range = HInverse::Range::kInterior;
  /// psi(t_hat, theta0); present when the truth was supplied.
  std::optional<double> g;
  double delta_eps2 = 0;  // e^eps / (e^eps - 1)^2
  std::size_t n_stage1 = 0;
  std::size_t n_stage2 = 0;
};

/// Two-stage estimator for a one-parameter exponential family from
/// sufficient-statistic values T(X_i). The first half gives a clipped
/// Laplace mean t_hat; the second half releases 1{T >= t_hat} by debiased
/// randomized response and the estimate is H(Zbar, t_hat). Out-of-range
/// Zbar is clamped to the bracket edge and flagged. eps = +inf disables
/// both noise sources.
ExpFamOneStep expfam_onestep(const ExpFamily1D& fam, const std::vector<double>& t_sample, double epsilon,
                             RngStream& rng, std::optional<double> clip_bound = std::nullopt,
                             std::optional<double> theta0 = std::nullopt);

/// Asymptotic variance 4 J^-2 (e^eps/(e^eps-1)^2 + G(1-G)) of sqrt(n)(theta_hat - theta0)
/// with n the stage-two size, J = l1_information(theta0).
double expfam_onestep_variance(const ExpFamily1D& fam, double theta0, double epsilon, double g = 0.5);

/// Smooth functional phi(theta).
struct Functional {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;

  static Functional linear(const Eigen::VectorXd& v);
};

enum class PilotRecovery {
  kShrink,     // pull the pilot mean toward grad A(0) by 0.9 until it inverts
  kPropagate,  // rethrow the grad_astar failure
};

struct OneStepOptions {
  double bound = 1.0;  // l-infinity radius r of the data
  PilotRecovery recovery = PilotRecovery::kShrink;
  int max_shrink_steps = 400;
};

struct OneStepEstimate {
  double phi_hat = 0;
  /// Plug-in of w' Cov w + 2 (r ||w||_1)^2 / eps^2, w = hess^{-1} grad phi at the pilot.
  double variance_hat = 0;
};

struct OneStepResult {
  std::vector<OneStepEstimate> estimates;  // one per functional
  Eigen::VectorXd mu_pilot;
  Eigen::VectorXd theta_pilot;
  int shrink_steps = 0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

/// Split n1 = ceil(n^{2/3}). Stage one releases each X_i through the Laplace
/// vector mechanism; mu_pilot is their mean and theta_pilot = grad A*(mu_pilot).
/// Stage two releases w'X_i + (r ||w||_1 / eps) Laplace(1) and returns
/// phi(theta_pilot) + Zbar - w'mu_pilot. Every functional reuses the same
/// pilot and stage-two sample. Covariance plug-in: hess A at the pilot.
OneStepResult mis_expfam_onestep(const MultiExpFamily& fam, const std::vector<Eigen::VectorXd>& sample,
                                 const std::vector<Functional>& functionals, double epsilon, RngStream& rng,
                                 const OneStepOptions& options = {});

/// sigma^2 = w' cov w + 2 ||w||_1^2 r^2 / eps^2, w = hess^{-1} grad_phi.
double mis_expfam_variance(const Eigen::MatrixXd& hess, const Eigen::MatrixXd& cov, const Eigen::VectorXd& grad_phi,
                           double epsilon, double bound = 1.0);

/// The one-step construction for the logistic GLM with phi(theta) = v'theta
/// for each v in `vs`. Covariance plug-in: E_Px[z z'] - m m', m = grad A(theta_pilot).
OneStepResult glm_onestep(const GlmLogistic& model, const std::vector<GlmSample>& sample,
                          const std::vector<Eigen::VectorXd>& vs, double epsilon, RngStream& rng,
                          const OneStepOptions& options = {});

/// Stochastic gradient baseline: theta^0 = 0, one pass over the sample,
/// theta^{k+1} = theta^k - eta_k (grad A_Px(theta^k) - Z^k), eta_k = step_scale / sqrt(k),
/// Z^k = laplace_privatize(T(x_k, y_k)). Returns the last or the averaged iterate.
Eigen::VectorXd private_sgd(const GlmLogistic& model, const std::vector<GlmSample>& sample, double epsilon,
                            RngStream& rng, double step_scale = 1.0 / 20.0, bool average = false);

struct MleResult {
  Eigen::VectorXd theta;
  bool converged = false;
  int iterations = 0;
};

/// Non-private maximum likelihood by Newton's method on the empirical log
/// loss (gradient norm 1e-8). converged = false flags separation.
MleResult mle_logistic(const GlmLogistic& model, const std::vector<GlmSample>& sample);

}  // namespace ldp
