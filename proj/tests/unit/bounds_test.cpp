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

#include <gtest/gtest.h>

#include <cmath>

#include "ldp/bounds.hpp"
#include "ldp/constants.hpp"
#include "ldp/divergences.hpp"
#include "ldp/rng.hpp"
#include "oracles.hpp"

namespace ldp {
namespace {

Eigen::VectorXd scalar(double x) { return Eigen::VectorXd::Constant(1, x); }

TEST(LossDist, Values) {
  EXPECT_NEAR(lossdist(LossSpec::squared(), scalar(0), scalar(1)), 0.25, 1e-15);
  EXPECT_NEAR(lossdist(LossSpec::squared(), scalar(0.3), scalar(0.3)), 0.0, 1e-15);
  auto linear = LossSpec::phi_of_distance([](double t) { return t; });
  EXPECT_NEAR(lossdist(linear, scalar(0), scalar(1)), 1.0, 1e-9);
  auto quad = LossSpec::phi_of_distance([](double t) { return t * t; });
  EXPECT_NEAR(lossdist(quad, scalar(0), scalar(1)), 0.5, 1e-9);
  EXPECT_NEAR(lossdist(quad, scalar(2), scalar(0)), lossdist(quad, scalar(0), scalar(2)), 1e-12);
}

TEST(Modulus, BernoulliGrid) {
  auto fam = bernoulli_grid_family(1e-3);
  const Candidate& base = fam[500];
  EXPECT_NEAR(modulus_search(LossSpec::squared(), base, fam, 0.1), 0.0025, 1e-12);
  EXPECT_NEAR(modulus_search(LossSpec::squared(), base, {}, 0.1), 0.0, 1e-15);
  auto curve = modulus_curve(LossSpec::squared(), base, fam, {0.01, 0.05, 0.1, 0.2, 0.4});
  EXPECT_TRUE(curve.is_monotone());
  EXPECT_NEAR(curve.at(0.1), 0.0025, 1e-12);
  EXPECT_NEAR(curve.at(0.15), 0.0025, 1e-12);
  EXPECT_NEAR(curve.at(0.001), 0.0, 1e-15);
}

TEST(Modulus, MeanMixtureSandwich) {
  auto base = DiscreteDistribution::uniform({"-1", "0", "1"});
  auto value = [](const Atom& a) { return scalar(std::stod(a)); };
  std::vector<double> weights;
  for (int k = 1; k <= 50; ++k) weights.push_back(k / 100.0);
  auto fam = mean_mixture_family(base, value, {"-1", "0", "1", "2", "-2"}, weights);
  Candidate p0{base, scalar(0)};
  auto linear = LossSpec::phi_of_distance([](double t) { return t; });
  for (double delta : {0.05, 0.1, 0.2}) {
    const double w = modulus_search(linear, p0, fam, delta);
    // sup |x - theta0| = 2 over the mixture points.
    EXPECT_GE(w, delta * 2 - 1e-9);
    EXPECT_LE(w, 2 * delta * 2 + 1e-9);
  }
}

TEST(Theorem1, QuadraticModulus) {
  auto sq = [](double d) { return d * d; };
  auto r = theorem1_lower(sq, 1, 1);
  EXPECT_NEAR(r.exact, oracle::kTheorem1QuadraticN1, 1e-9);
  EXPECT_NEAR(r.exact, std::expm1(0.5) / 32, 1e-15);
  EXPECT_LE(r.simplified, r.exact);
  EXPECT_NEAR(theorem1_lower([](double) { return 0.0; }, 10, 1).exact, 0.0, 1e-15);
}

TEST(Achievable, DeltaEpsAndPlugIn) {
  EXPECT_NEAR(delta_eps(std::log(3.0)), oracle::kDeltaEpsLn3, 1e-15);
  for (double e = 0.01; e <= 1.75; e += 0.01) EXPECT_GE(delta_eps(e), e / 5) << e;
  auto sq = [](double d) { return d * d; };
  EXPECT_NEAR(achievable_upper(sq, 100, std::log(3.0), 1, 1, 2), oracle::kAchievableQuadratic, 1e-9);
}

TEST(Sandwich, BernoulliGrid) {
  auto fam = bernoulli_grid_family(1e-3);
  for (std::size_t idx : {100u, 300u, 500u, 800u}) {
    const Candidate base = fam[idx];
    auto omega = [&](double d) { return modulus_search(LossSpec::squared(), base, fam, d); };
    for (double n : {1e2, 1e4})
      for (double eps : {0.5, 1.0}) {
        const double lower = theorem1_lower(omega, n, std::pow(std::expm1(eps), 2)).exact;
        EXPECT_LE(lower, achievable_upper(omega, n, eps, 4, 1, 2));
      }
  }
}

TEST(Growth, PowerLaws) {
  ModulusCurve lin, quad;
  for (double d = 1e-3; d <= 1.0; d *= 1.5) {
    lin.deltas.push_back(d);
    lin.values.push_back(d);
    quad.deltas.push_back(d);
    quad.values.push_back(d * d);
  }
  auto g1 = growth_check(lin);
  EXPECT_TRUE(g1.holds);
  EXPECT_EQ(g1.alpha_hat, 1);
  EXPECT_NEAR(g1.beta_hat, 1.0, 1e-12);
  auto g2 = growth_check(quad);
  EXPECT_EQ(g2.alpha_hat, 2);
  EXPECT_NEAR(growth_beta(quad, 2), 1.0, 1e-12);
}

TEST(Bernoulli, LowerBound) {
  EXPECT_NEAR(bernoulli_lower(512, 1), oracle::kBernoulliLowerN512, 1e-10);
  EXPECT_NEAR(bernoulli_lower(200, 0.3) * 2, bernoulli_lower(100, 0.3), 1e-18);
}

TEST(Logistic, TvMatchesBruteForce) {
  RngStream rng(4);
  EXPECT_NEAR(logistic_tv(0, std::log(2.0)), oracle::kLogisticTv0Ln2, 1e-15);
  for (int r = 0; r < 100; ++r) {
    const double t0 = 6 * rng.uniform() - 3, t1 = 6 * rng.uniform() - 3;
    // Joint on (x, y) in {-1,1}^2 with x uniform, P(y | x) = 1 / (1 + e^{-y x t}).
    double tv = 0;
    for (int x : {-1, 1})
      for (int y : {-1, 1}) tv += 0.5 * std::abs(1 / (1 + std::exp(-y * x * t0)) - 1 / (1 + std::exp(-y * x * t1)));
    EXPECT_NEAR(logistic_tv(t0, t1), tv / 2, 1e-12);
    EXPECT_DOUBLE_EQ(logistic_tv(t0, t1), logistic_tv(t1, t0));
  }
}

TEST(Logistic, PredictionRegimes) {
  auto plateau = logistic_pred_lower(10, 1, 1);
  EXPECT_EQ(plateau.regime, "plateau");
  EXPECT_NEAR(plateau.value, oracle::kLogisticPlateau, 1e-12);
  auto rate = logistic_pred_lower(0, 1e6, 1);
  EXPECT_EQ(rate.regime, "rate");
  EXPECT_NEAR(rate.value, constants::kLogisticPrediction / 1e3, 1e-15);
  EXPECT_NEAR(rate.non_private, std::sqrt(2 / M_PI) / std::sqrt(4e6), 1e-15);
}

TEST(Misc, ConstrainedRiskAndLeCam) {
  EXPECT_NEAR(constrained_risk(0, 0.7, 3), 0.7, 1e-15);
  EXPECT_NEAR(constrained_risk(0.25, 1, 4), 0.0, 1e-15);
  EXPECT_NEAR(constrained_risk(1, 0.5, 1), 0.0, 1e-15);
  EXPECT_NEAR(le_cam_private(0.25, 0.5), 0.0625, 1e-15);
  EXPECT_NEAR(le_cam_private(0.4, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(le_cam_private(0.4, 0.0), 0.2, 1e-15);
}

TEST(Misc, Superefficiency) {
  auto sq = [](double d) { return d * d; };
  EXPECT_NEAR(superefficiency_floor(sq, 1, 1, std::exp(-4.0), 0.5, 1), oracle::kSuperefficiencyFloor, 1e-10);
  EXPECT_NEAR(superefficiency_floor(sq, 1, 1, 1.0, 0.5, 1), 0.0, 1e-15);
  // Hinge inactive once eta >= (1/2)^{2/(1-t)}.
  for (double t : {0.2, 0.5, 0.8}) {
    const double eta = std::pow(0.5, 2 / (1 - t));
    EXPECT_NEAR(superefficiency_floor(sq, 10, 1, eta, t, 1), 0.0, 1e-15);
    EXPECT_NEAR(superefficiency_floor(sq, 10, 1, std::min(1.0, eta * 1.5), t, 1), 0.0, 1e-15);
  }
}

TEST(Misc, HighDimensionalMean) {
  auto half_sq = [](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm(); };
  EXPECT_NEAR(highdim_mean_lower(4, 1, 1, half_sq, Eigen::MatrixXd::Identity(4, 4)), 0.25, 1e-15);
  EXPECT_NEAR(highdim_mean_lower(1000, 1, 1, half_sq, Eigen::MatrixXd::Identity(1000, 1000)), 0.25, 1e-15);
  auto abs1 = [](const Eigen::VectorXd& x) { return std::abs(x(0)); };
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(1, 8);
  EXPECT_NEAR(highdim_mean_lower(8, 100, 1, abs1, ones), 0.5 * std::sqrt(8 / 400.0), 1e-15);
}

TEST(Misc, SparseLogistic) {
  auto sq = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
  auto r = sparse_logistic_lower(1, 64, 100, 1, sq, Eigen::MatrixXd::Identity(64, 64));
  EXPECT_NEAR(r.delta2, oracle::kSparseDelta2, 1e-7);
  EXPECT_NEAR(r.value, 0.5 * r.delta2, 1e-15);
  auto zero = sparse_logistic_lower(0, 64, 100, 1, sq, Eigen::MatrixXd::Identity(64, 64));
  EXPECT_TRUE(zero.middle.is_infinite());
  EXPECT_NEAR(zero.delta2, 64 / 6400.0, 1e-15);
  double prev = 2;
  for (double n = 10; n <= 1e6; n *= 10) {
    const double d2 = sparse_logistic_lower(1, 64, n, 1, sq, Eigen::MatrixXd::Identity(64, 64)).delta2;
    EXPECT_LE(d2, prev);
    prev = d2;
  }
}

TEST(Misc, MisspecifiedExpfam) {
  auto sq = [](double t) { return t * t; };
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(1, 1);
  EXPECT_NEAR(mis_expfam_lower(scalar(1), h, scalar(0), {scalar(0), scalar(1), scalar(-0.5)}, 1, 1, sq),
              oracle::kMisExpfamLower, 1e-15);
  EXPECT_NEAR(mis_expfam_lower(scalar(1), h, scalar(0), {scalar(0)}, 1, 1, sq), 0.0, 1e-15);
  // Quadratic scaling in the radius of the mean ball.
  const double a = mis_expfam_lower(scalar(1), h, scalar(0), {scalar(0.5)}, 10, 1, sq);
  const double b = mis_expfam_lower(scalar(1), h, scalar(0), {scalar(1.0)}, 10, 1, sq);
  EXPECT_NEAR(b / a, 4.0, 1e-12);
}

TEST(Misc, GrowthOnRademacherMeanModulus) {
  // Mixtures of the uniform law on {-1, 1} with point masses, parameterized
  // by the natural parameter atanh(mean).
  auto base = DiscreteDistribution::uniform({"-1", "1"});
  auto value = [](const Atom& a) { return scalar(std::stod(a)); };
  std::vector<double> weights;
  for (int k = 1; k <= 400; ++k) weights.push_back(0.8 * k / 400.0);
  auto fam = mean_mixture_family(base, value, {"-1", "1"}, weights,
                                 [](const Eigen::VectorXd& m) { return scalar(std::atanh(m(0))); });
  Candidate p0{base, scalar(0)};
  auto linear = LossSpec::phi_of_distance([](double t) { return t; });
  std::vector<double> deltas;
  for (double d = 0.01; d <= 0.4; d *= 1.25) deltas.push_back(d);
  auto curve = modulus_curve(linear, p0, fam, deltas);
  EXPECT_TRUE(curve.is_monotone());
  auto g = growth_check(curve);
  EXPECT_TRUE(g.holds);
  EXPECT_EQ(g.alpha_hat, 1);
}

}  // namespace
}  // namespace ldp
