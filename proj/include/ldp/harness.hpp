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
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ldp/distribution.hpp"
#include "ldp/expfam.hpp"
#include "ldp/glm.hpp"
#include "ldp/rng.hpp"

namespace ldp {

/// One estimator run inside one trial. error = estimate - target.
struct TrialReport {
  std::size_t trial_id = 0;
  std::uint64_t seed = 0;
  std::string estimator;
  double target = 0;
  double estimate = 0;
  double error = 0;
  double runtime_ms = 0;
};

/// An estimator under test. `run` draws its data from `data` (the same
/// stream state for every estimator in a trial, so all of them see the same
/// sample) and its privacy noise from `noise`.
struct EstimatorSpec {
  std::string name;
  double target = 0;
  std::function<double(RngStream& data, RngStream& noise)> run;
};

struct TrialPlan {
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<EstimatorSpec> estimators;
  int workers = 1;
  /// Wall-clock timing per call. Off by default so output is byte-stable.
  bool record_timing = false;
};

/// Runs every estimator on every trial. Data seed: derive(master, {trial});
/// noise seed: derive(master, {trial, estimator index + 1}), recorded in the
/// report. Output is sorted by (trial_id, estimator) whatever the worker count.
std::vector<TrialReport> run_trials(const TrialPlan& plan);

struct VarianceVerdict {
  double empirical = 0;  // sample variance of sqrt(n) * error
  double target = 0;
  double rel_error = 0;
  bool pass = false;
};

VarianceVerdict variance_check(const std::vector<TrialReport>& reports, double n, double target_variance,
                               double tolerance);

/// Mean of squared errors.
double mean_squared_error(const std::vector<TrialReport>& reports);

// Scenario builders shared by the CLI and the tests.

/// n Bernoulli(p) bits, randomized response estimate of p.
EstimatorSpec rr_bernoulli_spec(double p, std::size_t n, double epsilon);
/// Two-stage estimator on 2 * n_half draws of T under theta0.
EstimatorSpec expfam_onestep_spec(const ExpFamily1D& fam, double theta0, std::size_t n_half, double epsilon);
/// GLM one-step estimate of v'theta0 from n draws (x ~ P_x, y ~ p_theta0(.|x)).
EstimatorSpec glm_onestep_spec(const GlmLogistic& model, const Eigen::VectorXd& theta0, const Eigen::VectorXd& v,
                               std::size_t n, double epsilon);
/// Two-point test; the sample comes from P0 (truth = 0) or P1 (truth = 1).
/// The estimate is the returned parameter, so error != 0 marks a mistake.
EstimatorSpec two_point_spec(const DiscreteDistribution& p0, const DiscreteDistribution& p1, int truth,
                             std::size_t n, double epsilon);

/// Draws n observations from the logistic GLM at theta.
std::vector<GlmSample> sample_glm(const GlmLogistic& model, const Eigen::VectorXd& theta, std::size_t n,
                                  RngStream& rng);

/// Synthetic stand-in for a real covariate table: rows of tanh(g) with g a
/// Gaussian AR(1) vector (correlation `rho`). Target i is y = sign(x_i)
/// (zero maps to +1) predicted from the other columns plus a bias.
class SyntheticPopulation {
 public:
  SyntheticPopulation(std::uint64_t seed, int rows = 5000, int dim = 6, double rho = 0.6);

  int rows() const { return static_cast<int>(x_.rows()); }
  int dim() const { return static_cast<int>(x_.cols()); }
  std::uint64_t seed() const { return seed_; }
  const Eigen::MatrixXd& features() const { return x_; }

  /// Model for target i: covariates are the other columns, P_x uniform over rows.
  const GlmLogistic& model(int target) const { return models_[static_cast<std::size_t>(target)]; }
  /// Label of `row` for target i.
  int label(int target, int row) const { return labels_(row, target); }
  /// Population maximum-likelihood parameter for target i.
  const Eigen::VectorXd& theta_ml(int target) const { return theta_ml_[static_cast<std::size_t>(target)]; }

 private:
  std::uint64_t seed_;
  Eigen::MatrixXd x_;
  Eigen::MatrixXi labels_;
  std::vector<GlmLogistic> models_;
  std::vector<Eigen::VectorXd> theta_ml_;
};

struct Histogram {
  std::string estimator;
  double lo = 0;
  double hi = 0;
  std::vector<long> counts;  // counts[0] underflow, counts.back() overflow
  long total() const;
};

struct WinRow {
  std::size_t n = 0;
  double epsilon = 0;
  std::string versus;  // "sgd" or "init"
  long wins = 0;
  long total = 0;
  double frequency() const { return total ? static_cast<double>(wins) / static_cast<double>(total) : 0.0; }
};

struct ExperimentOptions {
  std::size_t trials = 50;
  std::uint64_t master_seed = 0;
  int bins = 40;
  double range = 2.0;  // histogram covers [-range, range]
  double step_scale = 1.0 / 20.0;
};

struct ExperimentCell {
  std::size_t n = 0;
  double epsilon = 0;
  std::vector<Histogram> histograms;  // sgd, onestep, init, mle
};

struct ExperimentResult {
  std::vector<ExperimentCell> cells;
  std::vector<WinRow> win_table;
  double runtime_ms = 0;
};

/// Per (N, eps) cell and trial: resample N rows with replacement; for every
/// target run private SGD, the one-step estimator (v = e_1..e_d sharing one
/// pilot, which is also reported as "init") and the non-private MLE; compare
/// each coordinate with the population MLE.
ExperimentResult experiment_glm(const SyntheticPopulation& population, const std::vector<std::size_t>& n_list,
                                const std::vector<double>& epsilon_list, const ExperimentOptions& options);

}  // namespace ldp
