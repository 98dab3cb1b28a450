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

#include "ldp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ldp/constants.hpp"
#include "ldp/divergences.hpp"

namespace ldp {

namespace {

double logistic_phi(double t) { return 1.0 / (1.0 + std::exp(t)); }

double hinge(double x) { return x > 0 ? x : 0.0; }

double inf_over_segment(const ScalarFn& phi, double gap) {
  auto f = [&](double lambda) { return phi(lambda * gap) + phi((1 - lambda) * gap); };
  double best = std::min({f(0.0), f(0.5), f(1.0)});
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = 0, b = 1;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > constants::kGoldenSectionTol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min({best, fc, fd});
}

}  // namespace

double LossSpec::loss(const Eigen::VectorXd& theta, const Eigen::VectorXd& theta_p) const {
  const double dist = (theta - theta_p).norm();
  switch (kind) {
    case Kind::kSquared:
      return 0.5 * dist * dist;
    case Kind::kTruncatedSquared:
      return std::min(dist * dist, 1.0);
    case Kind::kPredictionLogistic: {
      const double t = theta(0), tp = theta_p(0);
      return logistic_phi(-tp) * std::abs(logistic_phi(-t) - logistic_phi(-tp)) +
             logistic_phi(tp) * std::abs(logistic_phi(t) - logistic_phi(tp));
    }
    case Kind::kPhiOfDistance:
      return phi(dist);
  }
  return 0;
}

double lossdist(const LossSpec& loss, const Eigen::VectorXd& theta0, const Eigen::VectorXd& theta1) {
  if (theta0.size() != theta1.size()) throw std::invalid_argument("lossdist: parameter dimensions differ");
  const double gap = (theta0 - theta1).norm();
  switch (loss.kind) {
    case LossSpec::Kind::kSquared:
      return 0.25 * gap * gap;
    case LossSpec::Kind::kTruncatedSquared:
      return inf_over_segment([](double t) { return std::min(t * t, 1.0); }, gap);
    case LossSpec::Kind::kPredictionLogistic:
      return std::abs(logistic_phi(theta0(0)) - logistic_phi(theta1(0)));
    case LossSpec::Kind::kPhiOfDistance:
      if (!loss.phi) throw std::invalid_argument("lossdist: Phi not supplied");
      return inf_over_segment(loss.phi, gap);
  }
  return 0;
}

double lossdist(const LossSpec& loss, const Candidate& p0, const Candidate& p1) {
  return lossdist(loss, p0.parameter, p1.parameter);
}

double modulus_search(const LossSpec& loss, const Candidate& p0, const std::vector<Candidate>& candidates,
                      double delta) {
  double best = 0;
  for (const auto& c : candidates)
    if (tv_distance(p0.distribution, c.distribution) <= delta + constants::kEqualityTol)
      best = std::max(best, lossdist(loss, p0, c));
  return best;
}

bool ModulusCurve::is_monotone() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1] || deltas[i] < deltas[i - 1]) return false;
  return true;
}

double ModulusCurve::at(double d) const {
  double v = 0;
  for (std::size_t i = 0; i < deltas.size() && deltas[i] <= d; ++i) v = values[i];
  return v;
}

ModulusCurve modulus_curve(const LossSpec& loss, const Candidate& p0, const std::vector<Candidate>& candidates,
                           const std::vector<double>& deltas) {
  if (!std::is_sorted(deltas.begin(), deltas.end())) throw std::invalid_argument("modulus_curve: deltas not sorted");
  std::vector<double> tv(candidates.size()), sep(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    tv[i] = tv_distance(p0.distribution, candidates[i].distribution);
    sep[i] = lossdist(loss, p0, candidates[i]);
  }
  ModulusCurve curve;
  curve.deltas = deltas;
  for (double d : deltas) {
    double best = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (tv[i] <= d + constants::kEqualityTol) best = std::max(best, sep[i]);
    curve.values.push_back(best);
  }
  return curve;
}

std::vector<Candidate> bernoulli_grid_family(double step) {
  if (!(step > 0 && step <= 1)) throw std::invalid_argument("bernoulli_grid_family: step must be in (0, 1]");
  const long k = std::lround(1.0 / step);
  std::vector<Candidate> out;
  for (long i = 0; i <= k; ++i) {
    double p = std::min(1.0, static_cast<double>(i) / static_cast<double>(k));
    out.push_back({DiscreteDistribution::bernoulli(p), Eigen::VectorXd::Constant(1, p)});
  }
  return out;
}

Atom numeric_atom(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::vector<Candidate> mean_mixture_family(
    const DiscreteDistribution& base, const std::function<Eigen::VectorXd(const Atom&)>& value,
    const std::vector<Atom>& points, const std::vector<double>& weights,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& parameter) {
  auto mean_of = [&](const DiscreteDistribution& p) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(value(p.support()[0]).size());
    for (std::size_t i = 0; i < p.size(); ++i) m += p.mass()(static_cast<Eigen::Index>(i)) * value(p.support()[i]);
    return m;
  };
  auto make = [&](DiscreteDistribution p) {
    Eigen::VectorXd m = mean_of(p);
    return Candidate{std::move(p), parameter ? parameter(m) : m};
  };
  std::vector<Candidate> out;
  out.push_back(make(base));
  for (const Atom& x : points) {
    for (double w : weights) {
      if (w < 0 || w > 1) throw std::invalid_argument("mean_mixture_family: weight outside [0, 1]");
      out.push_back(make(mixture({base, DiscreteDistribution::point_mass(x)}, {1 - w, w})));
    }
  }
  return out;
}

Theorem1Lower theorem1_lower(const ScalarFn& modulus, double n, double epsilon2) {
  if (!(n > 0) || !(epsilon2 > 0)) throw std::invalid_argument("theorem1_lower: n and epsilon2 must be positive");
  const double eps = std::sqrt(epsilon2);
  Theorem1Lower out;
  out.exact = modulus(std::sqrt(std::expm1(1.0 / (2 * n))) / (2 * eps)) / 8;
  out.simplified = modulus(1.0 / std::sqrt(8 * n * epsilon2)) / 8;
  return out;
}

double delta_eps(double epsilon) {
  if (std::isinf(epsilon)) return 0.5;
  return 1.0 / (1.0 + std::exp(-epsilon)) - 0.5;
}

double achievable_upper(const ScalarFn& modulus, double n, double epsilon, double gamma, double beta, double alpha) {
  if (!(n > 0) || !(epsilon > 0)) throw std::invalid_argument("achievable_upper: n and epsilon must be positive");
  const double c = gamma * std::pow(beta, alpha) * std::exp(alpha / 2 * (std::log(alpha / 2) - 1));
  return c * modulus(std::sqrt(2.0) / (delta_eps(epsilon) * std::sqrt(n)));
}

double growth_beta(const ModulusCurve& curve, double alpha) {
  double beta = 0;
  const auto& d = curve.deltas;
  const auto& w = curve.values;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i; j < d.size(); ++j) {
      if (!(d[i] > 0) || w[j] <= 0) continue;
      if (w[i] <= 0) return std::numeric_limits<double>::infinity();
      const double c = d[j] / d[i];
      beta = std::max(beta, std::pow(w[j] / w[i], 1.0 / alpha) / c);
    }
  }
  return beta;
}

GrowthReport growth_check(const ModulusCurve& curve, double beta_cap, int alpha_max) {
  GrowthReport r;
  for (int alpha = 1; alpha <= alpha_max; ++alpha) {
    double beta = growth_beta(curve, alpha);
    if (beta <= beta_cap) {
      r.alpha_hat = alpha;
      r.beta_hat = beta;
      r.holds = true;
      return r;
    }
  }
  r.alpha_hat = alpha_max;
  r.beta_hat = growth_beta(curve, alpha_max);
  const auto& d = curve.deltas;
  const auto& w = curve.values;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i; j < d.size(); ++j)
      if (d[i] > 0 && w[j] > std::pow(beta_cap * d[j] / d[i], alpha_max) * w[i]) r.violations.emplace_back(i, j);
  return r;
}

double bernoulli_lower(double n, double epsilon2) {
  if (!(n > 0) || !(epsilon2 > 0)) throw std::invalid_argument("bernoulli_lower: n and epsilon2 must be positive");
  return constants::kBernoulliLower / (n * epsilon2);
}

double logistic_tv(double theta0, double theta1) {
  return std::abs(std::exp(theta1) - std::exp(theta0)) / ((1 + std::exp(theta1)) * (1 + std::exp(theta0)));
}

LogisticPredLower logistic_pred_lower(double theta0, double n, double epsilon2) {
  if (!(n > 0) || !(epsilon2 > 0)) throw std::invalid_argument("logistic_pred_lower: n and epsilon2 must be positive");
  const double t = std::abs(theta0);
  LogisticPredLower out;
  out.delta = 1.0 / std::sqrt(8 * n * epsilon2);
  out.regime = out.delta < std::exp(-t) ? "rate" : "plateau";
  out.value = constants::kLogisticPrediction * std::min(1.0 / std::sqrt(n * epsilon2), 1.0 / (1 + std::exp(t)));
  out.non_private = std::sqrt(2 / M_PI) / std::sqrt((2 + std::exp(theta0) + std::exp(-theta0)) * n);
  return out;
}

double constrained_risk(double delta, double gap, double affinity) {
  if (delta < 0 || gap < 0 || affinity < 1 - constants::kEqualityTol)
    throw std::invalid_argument("constrained_risk: need delta, gap >= 0 and affinity >= 1");
  const double h = hinge(std::sqrt(gap) - std::sqrt(affinity * delta));
  return h * h;
}

double superefficiency_floor(const ScalarFn& modulus, double n, double epsilon2, double eta, double t, double gamma) {
  if (!(eta > 0 && eta <= 1) || !(t > 0 && t < 1) || !(gamma > 0) || !(n > 0) || !(epsilon2 > 0))
    throw std::invalid_argument("superefficiency_floor: parameter out of range");
  const double h = hinge(0.5 - std::pow(eta, (1 - t) / 2));
  if (h == 0) return 0;
  return h * h * modulus(0.25 * std::sqrt(t * std::log(1 / eta) / (n * epsilon2))) / gamma;
}

double le_cam_private(double separation, double tv_marginals) {
  if (tv_marginals < 0 || tv_marginals > 1) throw std::invalid_argument("le_cam_private: tv outside [0, 1]");
  return 0.5 * separation * (1 - tv_marginals);
}

namespace {

double min_over_columns(const VectorFn& phi, const Eigen::MatrixXd& psi, double scale) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < psi.cols(); ++j) best = std::min(best, phi(scale * psi.col(j)));
  return best;
}

}  // namespace

double highdim_mean_lower(int d, double n, double epsilon2, const VectorFn& phi, const Eigen::MatrixXd& psi) {
  if (d < 1 || psi.cols() != d) throw std::invalid_argument("highdim_mean_lower: psi must have d columns");
  if (!(n > 0) || !(epsilon2 > 0)) throw std::invalid_argument("highdim_mean_lower: n and epsilon2 must be positive");
  const double scale = std::min(std::sqrt(d / (4 * n * epsilon2)), 1.0);
  return 0.5 * min_over_columns(phi, psi, scale);
}

SparseLogisticLower sparse_logistic_lower(double theta0, int d, double n, double epsilon2, const VectorFn& phi,
                                          const Eigen::MatrixXd& psi) {
  if (d < 1 || psi.cols() != d) throw std::invalid_argument("sparse_logistic_lower: psi must have d columns");
  if (!(n > 0) || !(epsilon2 > 0)) throw std::invalid_argument("sparse_logistic_lower: n and epsilon2 must be positive");
  const double t = std::abs(theta0);
  SparseLogisticLower out;
  const double first = std::exp(2 * t) * d / (64 * n * epsilon2);
  const double shrink = -std::expm1(-t);
  out.middle = shrink == 0 ? ExtendedReal::infinity()
                           : ExtendedReal(std::exp(t) / (8 * shrink * std::sqrt(n * epsilon2)));
  out.delta2 = std::min({first, out.middle.value_or(std::numeric_limits<double>::max()), 1.0});
  out.value = 0.5 * min_over_columns(phi, psi, std::sqrt(out.delta2));
  return out;
}

double mis_expfam_lower(const Eigen::VectorXd& grad_phi, const Eigen::MatrixXd& hess_a, const Eigen::VectorXd& mean0,
                        const std::vector<Eigen::VectorXd>& mean_candidates, double n, double epsilon2,
                        const ScalarFn& phi) {
  if (!(n > 0) || !(epsilon2 > 0)) throw std::invalid_argument("mis_expfam_lower: n and epsilon2 must be positive");
  Eigen::LDLT<Eigen::MatrixXd> ldlt(hess_a);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw std::invalid_argument("mis_expfam_lower: Hessian not positive definite");
  const Eigen::VectorXd w = ldlt.solve(grad_phi);
  const double denom = 2 * std::sqrt(8 * n * epsilon2);
  double best = 0;
  for (const auto& mu : mean_candidates) best = std::max(best, phi(w.dot(mean0 - mu) / denom));
  return best / 4;
}

}  // namespace ldp
