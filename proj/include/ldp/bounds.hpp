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
#include <string>
#include <vector>

#include "ldp/distribution.hpp"
#include "ldp/extended_real.hpp"

namespace ldp {

/// Scalar modulus or loss-shape function.
using ScalarFn = std::function<double(double)>;
/// Loss shape on parameter vectors.
using VectorFn = std::function<double(const Eigen::VectorXd&)>;

/// Loss L(theta, P) and its induced separation
/// d_L(P0, P1) = inf_theta {L(theta, P0) + L(theta, P1)}.
struct LossSpec {
  enum class Kind {
    kSquared,             // L = 1/2 ||theta - theta(P)||^2; d_L = 1/4 gap^2
    kTruncatedSquared,    // Phi(t) = min(t^2, 1) of the distance
    kPredictionLogistic,  // d_L = |phi(theta0) - phi(theta1)|, phi(t) = 1/(1+e^t)
    kPhiOfDistance,       // L = Phi(||theta - theta(P)||), Phi non-decreasing
  };
  Kind kind = Kind::kSquared;
  ScalarFn phi;  // used by kPhiOfDistance

  static LossSpec squared() { return {Kind::kSquared, {}}; }
  static LossSpec truncated_squared() { return {Kind::kTruncatedSquared, {}}; }
  static LossSpec prediction_logistic() { return {Kind::kPredictionLogistic, {}}; }
  static LossSpec phi_of_distance(ScalarFn phi) { return {Kind::kPhiOfDistance, std::move(phi)}; }

  /// L(theta, P) for a distribution whose parameter is `theta_p`.
  double loss(const Eigen::VectorXd& theta, const Eigen::VectorXd& theta_p) const;
};

/// A distribution together with its parameter theta(P).
struct Candidate {
  DiscreteDistribution distribution;
  Eigen::VectorXd parameter;
};

/// Separation d_L between two parameter values. For Phi-of-distance losses
/// the infimum over the segment is taken by golden-section search in lambda
/// (tolerance 1e-10) together with the endpoints and the midpoint.
double lossdist(const LossSpec& loss, const Eigen::VectorXd& theta0, const Eigen::VectorXd& theta1);
double lossdist(const LossSpec& loss, const Candidate& p0, const Candidate& p1);

/// Max of lossdist(p0, P) over candidates with tv(P, p0) <= delta. Exact over
/// the supplied family; 0 when no candidate is eligible.
double modulus_search(const LossSpec& loss, const Candidate& p0, const std::vector<Candidate>& candidates,
                      double delta);

struct ModulusCurve {
  std::vector<double> deltas;  // increasing
  std::vector<double> values;

  bool is_monotone() const;
  /// Piecewise-constant lookup: the value at the largest grid delta <= d
  /// (a lower bound on the modulus at d). 0 below the grid.
  double at(double d) const;
};

/// modulus_search on each delta. TV distances are computed once.
ModulusCurve modulus_curve(const LossSpec& loss, const Candidate& p0, const std::vector<Candidate>& candidates,
                           const std::vector<double>& deltas);

/// Bernoulli(p) for p = 0, step, 2 step, ..., 1 with parameter p.
std::vector<Candidate> bernoulli_grid_family(double step);

/// Atom label for a real value, "%.10g".
Atom numeric_atom(double x);

/// Mixtures (1 - w) P0 + w 1_x for every x in `points` and w in `weights`,
/// plus P0 itself. The parameter of each mixture is `parameter(mean)` where
/// mean is the expectation of the atom values under the mixture.
std::vector<Candidate> mean_mixture_family(
    const DiscreteDistribution& base, const std::function<Eigen::VectorXd(const Atom&)>& value,
    const std::vector<Atom>& points, const std::vector<double>& weights,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& parameter = nullptr);

struct Theorem1Lower {
  double exact = 0;       // (1/8) omega(sqrt(e^{1/(2n)} - 1) / (2 eps))
  double simplified = 0;  // (1/8) omega(1 / sqrt(8 n eps^2))
};

Theorem1Lower theorem1_lower(const ScalarFn& modulus, double n, double epsilon2);

/// e^eps / (e^eps + 1) - 1/2.
double delta_eps(double epsilon);

/// gamma beta^alpha e^{(alpha/2)(log(alpha/2) - 1)} omega(sqrt 2 / (delta_eps sqrt n)).
double achievable_upper(const ScalarFn& modulus, double n, double epsilon, double gamma, double beta, double alpha);

struct GrowthReport {
  int alpha_hat = 0;
  double beta_hat = 0;
  bool holds = false;
  /// Grid pairs (i, j) violating omega(c delta) <= (beta c)^alpha omega(delta)
  /// at the reported alpha and the beta cap.
  std::vector<std::pair<std::size_t, std::size_t>> violations;
};

/// Smallest beta for a fixed alpha such that omega(c d) <= (beta c)^alpha omega(d)
/// over all grid pairs with c >= 1; +infinity when omega vanishes below a
/// positive value.
double growth_beta(const ModulusCurve& curve, double alpha);

/// Smallest integer alpha in [1, alpha_max] whose fitted beta is <= beta_cap.
/// The grid should span a wide ratio of deltas; on a narrow grid every
/// polynomial looks linear.
GrowthReport growth_check(const ModulusCurve& curve, double beta_cap = 2.0, int alpha_max = 8);

/// c / (n eps^2) with c = 1/512.
double bernoulli_lower(double n, double epsilon2);

/// Variation distance between one-parameter logistic laws on (x, y) in {-1,1}^2.
double logistic_tv(double theta0, double theta1);

struct LogisticPredLower {
  double value = 0;
  double delta = 0;  // 1 / sqrt(8 n eps^2)
  std::string regime;  // "rate" when delta < e^{-|theta0|}, else "plateau"
  double non_private = 0;  // sqrt(2/pi) / sqrt((2 + e^t + e^-t) n)
};

LogisticPredLower logistic_pred_lower(double theta0, double n, double epsilon2);

/// hinge(sqrt(gap) - sqrt(affinity * delta))^2.
double constrained_risk(double delta, double gap, double affinity);

/// gamma^-1 hinge(1/2 - eta^{(1-t)/2})^2 omega(1/4 sqrt(t log(1/eta) / (n eps^2))).
double superefficiency_floor(const ScalarFn& modulus, double n, double epsilon2, double eta, double t, double gamma);

/// 1/2 separation (1 - tv).
double le_cam_private(double separation, double tv_marginals);

/// 1/2 min_j Phi(min{sqrt(d / (4 n eps^2)), 1} psi e_j); `psi` is k x d.
double highdim_mean_lower(int d, double n, double epsilon2, const VectorFn& phi, const Eigen::MatrixXd& psi);

struct SparseLogisticLower {
  double delta2 = 0;
  ExtendedReal middle = 0.0;  // +inf marker at theta0 = 0
  double value = 0;
};

/// delta_n^2 = min{e^{2|t|} d / (64 n eps^2), e^{|t|} / (8 (1 - e^{-|t|}) sqrt(n eps^2)), 1};
/// value = min_j 1/2 Phi(delta_n psi e_j).
SparseLogisticLower sparse_logistic_lower(double theta0, int d, double n, double epsilon2, const VectorFn& phi,
                                          const Eigen::MatrixXd& psi);

/// 1/4 max_mu Phi(grad_phi' hessA^{-1} (mean0 - mu) / (2 sqrt(8 n eps^2))).
/// The O(1/(n eps^2)) remainder is dropped.
double mis_expfam_lower(const Eigen::VectorXd& grad_phi, const Eigen::MatrixXd& hess_a, const Eigen::VectorXd& mean0,
                        const std::vector<Eigen::VectorXd>& mean_candidates, double n, double epsilon2,
                        const ScalarFn& phi);

}  // namespace ldp
