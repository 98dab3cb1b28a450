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

#include "ldp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ldp/bounds.hpp"
#include "ldp/channels.hpp"
#include "ldp/constants.hpp"
#include "ldp/errors.hpp"

namespace ldp {

RrBernoulliEstimate rr_bernoulli_estimate(const std::vector<int>& bits, double epsilon, RngStream& rng) {
  if (!(epsilon > 0)) throw std::invalid_argument("rr_bernoulli_estimate: epsilon must be positive");
  if (bits.empty()) throw std::invalid_argument("rr_bernoulli_estimate: empty sample");
  RandomizedResponseBit mech{epsilon, false};
  const double q = mech.flip_probability();
  double sum = 0;
  for (int b : bits) sum += rr_privatize(b, mech, rng);
  const double n = static_cast<double>(bits.size());
  const double m = sum / n;
  RrBernoulliEstimate out;
  out.p_hat = (m - q) / (1 - 2 * q);
  out.analytic_variance = m * (1 - m) / (n * (1 - 2 * q) * (1 - 2 * q));
  return out;
}

double rr_bernoulli_variance(double p, double epsilon, double n) {
  const double q = RandomizedResponseBit{epsilon, false}.flip_probability();
  const double m = q + p * (1 - 2 * q);
  return m * (1 - m) / (n * (1 - 2 * q) * (1 - 2 * q));
}

TwoPointResult two_point_test(const std::vector<Atom>& sample, const DiscreteDistribution& p0,
                              const DiscreteDistribution& p1, double theta0, double theta1, double epsilon,
                              RngStream& rng) {
  if (!(epsilon > 0)) throw std::invalid_argument("two_point_test: epsilon must be positive");
  if (sample.empty()) throw std::invalid_argument("two_point_test: empty sample");
  Aligned a = align(p0, p1);
  double p0a = 0, p1a = 0;
  std::vector<Atom> accept;
  for (std::size_t i = 0; i < a.support.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (a.p(k) > a.q(k)) {
      accept.push_back(a.support[i]);
      p0a += a.p(k);
      p1a += a.q(k);
    }
  }
  TwoPointResult out;
  out.threshold = (p0a + p1a) / 2;
  const double tv = p0a - p1a;
  if (tv <= 0) {
    out.degenerate = true;
    out.theta = theta0;
    return out;
  }
  std::sort(accept.begin(), accept.end());
  RandomizedResponseBit mech{epsilon, false};
  double sum = 0;
  for (const Atom& x : sample) {
    int t = std::binary_search(accept.begin(), accept.end(), x) ? 1 : 0;
    sum += rr_privatize(t, mech, rng);
  }
  const double de = delta_eps(epsilon);
  const double n = static_cast<double>(sample.size());
  // P(Z = 1 | T = t) = 1/2 - de + 2 de t.
  out.k_n = (sum / n - (0.5 - de)) / (2 * de);
  out.theta = out.k_n >= out.threshold ? theta0 : theta1;
  out.error_bound = std::exp(-n * de * de * tv * tv / 2);
  return out;
}

ExpFamOneStep expfam_onestep(const ExpFamily1D& fam, const std::vector<double>& t_sample, double epsilon,
                             RngStream& rng, std::optional<double> clip_bound, std::optional<double> theta0) {
  if (t_sample.size() < 4) throw std::invalid_argument("expfam_onestep: need at least 4 observations");
  if (!(epsilon > 0)) throw std::invalid_argument("expfam_onestep: epsilon must be positive");
  const double b = clip_bound.value_or(fam.default_clip_bound());
  if (!(b > 0)) throw std::invalid_argument("expfam_onestep: clip bound must be positive");
  const std::size_t half = t_sample.size() / 2;
  ExpFamOneStep out;
  out.n_stage1 = half;
  out.n_stage2 = t_sample.size() - half;

  const bool noiseless = std::isinf(epsilon);
  double s = 0;
  for (std::size_t i = 0; i < half; ++i) {
    s += std::clamp(t_sample[i], -b, b);
    if (!noiseless) s += rng.laplace(2 * b / epsilon);
  }
  out.t_hat = s / static_cast<double>(half);

  RandomizedResponseBit mech{epsilon, true};
  out.delta_eps2 = mech.debiased_variance();
  double z = 0;
  for (std::size_t i = half; i < t_sample.size(); ++i) z += rr_privatize(t_sample[i] >= out.t_hat ? 1 : 0, mech, rng);
  out.z_bar = z / static_cast<double>(out.n_stage2);

  HInverse h = invert_h(fam, out.z_bar, out.t_hat);
  out.range = h.range;
  out.theta_hat = std::clamp(h.theta, -constants::kBracketCap, constants::kBracketCap);
  if (theta0) out.g = fam.psi(out.t_hat, *theta0);
  return out;
}

double expfam_onestep_variance(const ExpFamily1D& fam, double theta0, double epsilon, double g) {
  const double j = fam.l1_information(theta0);
  const double de2 = RandomizedResponseBit{epsilon, true}.debiased_variance();
  return 4 / (j * j) * (de2 + g * (1 - g));
}

Functional Functional::linear(const Eigen::VectorXd& v) {
  return {[v](const Eigen::VectorXd& t) { return v.dot(t); }, [v](const Eigen::VectorXd&) { return v; }};
}

double mis_expfam_variance(const Eigen::MatrixXd& hess, const Eigen::MatrixXd& cov, const Eigen::VectorXd& grad_phi,
                           double epsilon, double bound) {
  Eigen::VectorXd w = hess.ldlt().solve(grad_phi);
  const double dual = bound * w.lpNorm<1>();
  const double noise = std::isinf(epsilon) ? 0.0 : 2 * dual * dual / (epsilon * epsilon);
  return w.dot(cov * w) + noise;
}

namespace {

std::size_t pilot_size(std::size_t n) {
  auto n1 = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 2.0 / 3.0) - 1e-9));
  return std::min(std::max<std::size_t>(n1, 1), n - 1);
}

template <LogPartition F>
ConjugateSolve invert_pilot(const F& fam, Eigen::VectorXd& mu, const OneStepOptions& options, int& steps) {
  const Eigen::VectorXd center = fam.gradient(Eigen::VectorXd::Zero(fam.dim()));
  steps = 0;
  while (true) {
    try {
      return grad_astar(fam, mu);
    } catch (const DomainError&) {
      if (options.recovery == PilotRecovery::kPropagate || steps >= options.max_shrink_steps) throw;
    } catch (const ConvergenceError&) {
      if (options.recovery == PilotRecovery::kPropagate || steps >= options.max_shrink_steps) throw;
    }
    mu = center + 0.9 * (mu - center);
    ++steps;
  }
}

// Shared two-stage construction over statistic vectors T_i.
template <LogPartition F, typename Cov>
OneStepResult onestep_core(const F& fam, const std::vector<Eigen::VectorXd>& t, const std::vector<Functional>& fns,
                           double epsilon, RngStream& rng, const OneStepOptions& options, Cov&& covariance) {
  const std::size_t n = t.size();
  if (n < 3) throw std::invalid_argument("one-step: need at least 3 observations");
  if (!(epsilon > 0)) throw std::invalid_argument("one-step: epsilon must be positive");
  const int d = fam.dim();
  OneStepResult out;
  out.n1 = pilot_size(n);
  out.n2 = n - out.n1;

  const bool noiseless = std::isinf(epsilon);
  LaplaceVectorMechanism mech{epsilon, options.bound, d};
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
  for (std::size_t i = 0; i < out.n1; ++i) mu += noiseless ? t[i] : laplace_privatize(t[i], mech, rng);
  mu /= static_cast<double>(out.n1);

  ConjugateSolve pilot = invert_pilot(fam, mu, options, out.shrink_steps);
  out.mu_pilot = mu;
  out.theta_pilot = pilot.theta;
  const Eigen::MatrixXd h = fam.hessian(pilot.theta);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw DomainError("one-step: Hessian at the pilot is not positive definite");
  const Eigen::MatrixXd cov = covariance(pilot.theta);

  // One stream per functional keeps each estimate independent of how many
  // other functionals were requested.
  for (std::size_t f = 0; f < fns.size(); ++f) {
    RngStream stream = rng.child({static_cast<std::uint64_t>(f)});
    const Eigen::VectorXd grad = fns[f].gradient(pilot.theta);
    const Eigen::VectorXd w = ldlt.solve(grad);
    const double scale = options.bound * w.lpNorm<1>() / epsilon;
    double z = 0;
    for (std::size_t i = out.n1; i < n; ++i) {
      z += w.dot(t[i]);
      if (!noiseless && scale > 0) z += stream.laplace(scale);
    }
    z /= static_cast<double>(out.n2);
    OneStepEstimate e;
    e.phi_hat = fns[f].value(pilot.theta) + z - w.dot(mu);
    const double dual = options.bound * w.lpNorm<1>();
    e.variance_hat = w.dot(cov * w) + (noiseless ? 0.0 : 2 * dual * dual / (epsilon * epsilon));
    out.estimates.push_back(e);
  }
  return out;
}

}  // namespace

OneStepResult mis_expfam_onestep(const MultiExpFamily& fam, const std::vector<Eigen::VectorXd>& sample,
                                 const std::vector<Functional>& functionals, double epsilon, RngStream& rng,
                                 const OneStepOptions& options) {
  for (const auto& x : sample)
    if (x.size() != fam.dim() || x.cwiseAbs().maxCoeff() > options.bound * (1 + 1e-12))
      throw std::invalid_argument("mis_expfam_onestep: observation outside the data ball");
  return onestep_core(fam, sample, functionals, epsilon, rng, options,
                      [&](const Eigen::VectorXd& theta) { return fam.hessian(theta); });
}

OneStepResult glm_onestep(const GlmLogistic& model, const std::vector<GlmSample>& sample,
                          const std::vector<Eigen::VectorXd>& vs, double epsilon, RngStream& rng,
                          const OneStepOptions& options) {
  std::vector<Eigen::VectorXd> t;
  t.reserve(sample.size());
  for (const auto& s : sample) t.push_back(model.statistic(s));
  std::vector<Functional> fns;
  for (const auto& v : vs) {
    if (v.size() != model.dim()) throw std::invalid_argument("glm_onestep: functional dimension mismatch");
    fns.push_back(Functional::linear(v));
  }
  OneStepOptions opts = options;
  opts.bound = model.bound();
  const Eigen::MatrixXd second = model.design().transpose() * model.px().asDiagonal() * model.design();
  return onestep_core(model, t, fns, epsilon, rng, opts, [&](const Eigen::VectorXd& theta) {
    const Eigen::VectorXd m = model.gradient(theta);
    return Eigen::MatrixXd(second - m * m.transpose());
  });
}

Eigen::VectorXd private_sgd(const GlmLogistic& model, const std::vector<GlmSample>& sample, double epsilon,
                            RngStream& rng, double step_scale, bool average) {
  const int d = model.dim();
  LaplaceVectorMechanism mech{epsilon, model.bound(), d};
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd avg = Eigen::VectorXd::Zero(d);
  std::size_t k = 0;
  for (const auto& s : sample) {
    ++k;
    Eigen::VectorXd z = laplace_privatize(model.statistic(s), mech, rng);
    const double eta = step_scale / std::sqrt(static_cast<double>(k));
    theta -= eta * (model.gradient(theta) - z);
    avg += (theta - avg) / static_cast<double>(k);
  }
  return average ? avg : theta;
}

MleResult mle_logistic(const GlmLogistic& model, const std::vector<GlmSample>& sample) {
  if (sample.empty()) throw std::invalid_argument("mle_logistic: empty sample");
  const int d = model.dim();
  const Eigen::MatrixXd& z = model.design();
  // Sufficient statistics: counts and label sums per covariate atom.
  Eigen::VectorXd count = Eigen::VectorXd::Zero(model.atoms());
  Eigen::VectorXd label = Eigen::VectorXd::Zero(model.atoms());
  for (const auto& s : sample) {
    count(s.x_index) += 1;
    label(s.x_index) += s.y;
  }
  const double n = static_cast<double>(sample.size());
  count /= n;
  label /= n;
  auto loss = [&](const Eigen::VectorXd& theta) {
    Eigen::ArrayXd m = z * theta;
    Eigen::ArrayXd a = m.abs() + (-2 * m.abs()).exp().log1p();
    return count.dot(a.matrix()) - label.dot(m.matrix());
  };
  MleResult out;
  out.theta = Eigen::VectorXd::Zero(d);
  double f = loss(out.theta);
  for (int it = 0; it < 100; ++it) {
    Eigen::ArrayXd th = (z * out.theta).array().tanh();
    Eigen::VectorXd g = z.transpose() * (count.array() * th - label.array()).matrix();
    out.iterations = it;
    Eigen::VectorXd w = count.array() * (1 - th * th);
    Eigen::MatrixXd h = z.transpose() * w.asDiagonal() * z;
    Eigen::VectorXd step = h.ldlt().solve(g);
    if (!step.allFinite()) break;
    // Under separation the gradient decays while the step stays of order one.
    if (g.norm() <= constants::kMleGradTol && step.norm() <= constants::kNewtonStepTol) {
      out.converged = true;
      return out;
    }
    double t = 1;
    Eigen::VectorXd next = out.theta - step;
    double f_next = loss(next);
    while (!(f_next <= f - 1e-4 * t * g.dot(step)) && t > 1e-12) {
      t *= 0.5;
      next = out.theta - t * step;
      f_next = loss(next);
    }
    if (t <= 1e-12) break;
    out.theta = next;
    f = f_next;
    if (out.theta.norm() > constants::kMleNormCap) break;
  }
  out.iterations = 100;
  return out;
}

}  // namespace ldp
