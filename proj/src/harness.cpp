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

#include "ldp/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ldp/estimators.hpp"

namespace ldp {

namespace {

constexpr std::uint64_t kDataStream = 0;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<TrialReport> run_trials(const TrialPlan& plan) {
  if (plan.estimators.empty() && plan.trials > 0) throw std::invalid_argument("run_trials: no estimators");
  for (const auto& e : plan.estimators)
    if (!e.run) throw std::invalid_argument("run_trials: estimator '" + e.name + "' has no body");
  const std::size_t ne = plan.estimators.size();
  std::vector<TrialReport> reports(plan.trials * ne);

  auto work = [&](std::size_t first, std::size_t last) {
    for (std::size_t t = first; t < last; ++t) {
      const std::uint64_t data_seed = derive_seed(plan.master_seed, {t, kDataStream});
      for (std::size_t e = 0; e < ne; ++e) {
        const EstimatorSpec& spec = plan.estimators[e];
        RngStream data(data_seed);
        RngStream noise(derive_seed(plan.master_seed, {t, e + 1}));
        TrialReport& r = reports[t * ne + e];
        r.trial_id = t;
        r.seed = noise.seed();
        r.estimator = spec.name;
        r.target = spec.target;
        auto start = std::chrono::steady_clock::now();
        r.estimate = spec.run(data, noise);
        if (plan.record_timing) r.runtime_ms = elapsed_ms(start);
        r.error = r.estimate - r.target;
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(plan.workers, 1)), 1,
                                                      std::max<std::size_t>(plan.trials, 1));
  if (workers == 1) {
    work(0, plan.trials);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (plan.trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t first = w * chunk, last = std::min(plan.trials, first + chunk);
      if (first < last) pool.emplace_back(work, first, last);
    }
    for (auto& th : pool) th.join();
  }
  std::stable_sort(reports.begin(), reports.end(), [](const TrialReport& a, const TrialReport& b) {
    return a.trial_id != b.trial_id ? a.trial_id < b.trial_id : a.estimator < b.estimator;
  });
  return reports;
}

VarianceVerdict variance_check(const std::vector<TrialReport>& reports, double n, double target_variance,
                               double tolerance) {
  if (reports.size() < 2) throw std::invalid_argument("variance_check: need at least two reports");
  double mean = 0;
  for (const auto& r : reports) mean += r.error;
  mean /= static_cast<double>(reports.size());
  double ss = 0;
  for (const auto& r : reports) ss += (r.error - mean) * (r.error - mean);
  VarianceVerdict v;
  v.empirical = n * ss / static_cast<double>(reports.size() - 1);
  v.target = target_variance;
  v.rel_error = std::abs(v.empirical - target_variance) / target_variance;
  v.pass = v.rel_error <= tolerance;
  return v;
}

double mean_squared_error(const std::vector<TrialReport>& reports) {
  if (reports.empty()) return 0;
  double s = 0;
  for (const auto& r : reports) s += r.error * r.error;
  return s / static_cast<double>(reports.size());
}

EstimatorSpec rr_bernoulli_spec(double p, std::size_t n, double epsilon) {
  return {"rr_bernoulli", p, [=](RngStream& data, RngStream& noise) {
            std::vector<int> bits(n);
            for (auto& b : bits) b = data.bernoulli(p) ? 1 : 0;
            return rr_bernoulli_estimate(bits, epsilon, noise).p_hat;
          }};
}

EstimatorSpec expfam_onestep_spec(const ExpFamily1D& fam, double theta0, std::size_t n_half, double epsilon) {
  return {"expfam_onestep", theta0, [=](RngStream& data, RngStream& noise) {
            std::vector<double> t(2 * n_half);
            for (auto& x : t) x = fam.sample(theta0, data);
            return expfam_onestep(fam, t, epsilon, noise).theta_hat;
          }};
}

std::vector<GlmSample> sample_glm(const GlmLogistic& model, const Eigen::VectorXd& theta, std::size_t n,
                                  RngStream& rng) {
  // Inverse-CDF draw of the covariate atom.
  Eigen::VectorXd cdf(model.atoms());
  double acc = 0;
  for (int k = 0; k < model.atoms(); ++k) cdf(k) = acc += model.px()(k);
  std::vector<GlmSample> out(n);
  for (auto& s : out) {
    const double u = rng.uniform() * acc;
    s.x_index = static_cast<int>(std::upper_bound(cdf.data(), cdf.data() + cdf.size(), u) - cdf.data());
    s.x_index = std::min(s.x_index, model.atoms() - 1);
    s.y = rng.bernoulli(model.prob_positive(theta, s.x_index)) ? 1 : -1;
  }
  return out;
}

EstimatorSpec glm_onestep_spec(const GlmLogistic& model, const Eigen::VectorXd& theta0, const Eigen::VectorXd& v,
                               std::size_t n, double epsilon) {
  return {"glm_onestep", v.dot(theta0), [=](RngStream& data, RngStream& noise) {
            auto sample = sample_glm(model, theta0, n, data);
            return glm_onestep(model, sample, {v}, epsilon, noise).estimates[0].phi_hat;
          }};
}

EstimatorSpec two_point_spec(const DiscreteDistribution& p0, const DiscreteDistribution& p1, int truth,
                             std::size_t n, double epsilon) {
  if (truth != 0 && truth != 1) throw std::invalid_argument("two_point_spec: truth must be 0 or 1");
  const DiscreteDistribution& source = truth == 0 ? p0 : p1;
  return {"two_point_" + std::to_string(truth), static_cast<double>(truth), [=](RngStream& data, RngStream& noise) {
            std::vector<Atom> sample(n);
            for (auto& x : sample) {
              double u = data.uniform();
              std::size_t k = 0;
              while (k + 1 < source.size() && (u -= source.mass()(static_cast<Eigen::Index>(k))) >= 0) ++k;
              x = source.support()[k];
            }
            return two_point_test(sample, p0, p1, 0.0, 1.0, epsilon, noise).theta;
          }};
}

SyntheticPopulation::SyntheticPopulation(std::uint64_t seed, int rows, int dim, double rho) : seed_(seed) {
  if (rows < 10 || dim < 2) throw std::invalid_argument("SyntheticPopulation: need rows >= 10 and dim >= 2");
  if (!(std::abs(rho) < 1)) throw std::invalid_argument("SyntheticPopulation: |rho| must be < 1");
  RngStream rng(seed);
  x_.resize(rows, dim);
  const double innov = std::sqrt(1 - rho * rho);
  for (int r = 0; r < rows; ++r) {
    double g = rng.normal();
    x_(r, 0) = std::tanh(g);
    for (int j = 1; j < dim; ++j) {
      g = rho * g + innov * rng.normal();
      x_(r, j) = std::tanh(g);
    }
  }
  labels_.resize(rows, dim);
  for (int r = 0; r < rows; ++r)
    for (int j = 0; j < dim; ++j) labels_(r, j) = x_(r, j) < 0 ? -1 : 1;
  const Eigen::VectorXd px = Eigen::VectorXd::Constant(rows, 1.0 / rows);
  for (int i = 0; i < dim; ++i) {
    Eigen::MatrixXd others(rows, dim - 1);
    for (int j = 0, c = 0; j < dim; ++j)
      if (j != i) others.col(c++) = x_.col(j);
    models_.emplace_back(others, px, true);
    std::vector<GlmSample> all(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) all[static_cast<std::size_t>(r)] = {r, labels_(r, i)};
    MleResult mle = mle_logistic(models_.back(), all);
    if (!mle.converged) throw std::runtime_error("SyntheticPopulation: population MLE did not converge");
    theta_ml_.push_back(mle.theta);
  }
}

long Histogram::total() const {
  long s = 0;
  for (long c : counts) s += c;
  return s;
}

namespace {

void add_to(Histogram& h, double x, int bins) {
  std::size_t k;
  if (x < h.lo)
    k = 0;
  else if (x >= h.hi)
    k = static_cast<std::size_t>(bins) + 1;
  else
    k = 1 + std::min(static_cast<std::size_t>((x - h.lo) / (h.hi - h.lo) * bins), static_cast<std::size_t>(bins - 1));
  ++h.counts[k];
}

}  // namespace

ExperimentResult experiment_glm(const SyntheticPopulation& population, const std::vector<std::size_t>& n_list,
                                const std::vector<double>& epsilon_list, const ExperimentOptions& options) {
  if (options.bins < 1 || !(options.range > 0)) throw std::invalid_argument("experiment_glm: bad histogram options");
  const auto start = std::chrono::steady_clock::now();
  const int d = population.dim();
  ExperimentResult result;
  const char* names[] = {"sgd", "onestep", "init", "mle"};
  for (std::size_t n : n_list) {
    if (n < 8) throw std::invalid_argument("experiment_glm: sample size too small");
    for (double eps : epsilon_list) {
      ExperimentCell cell;
      cell.n = n;
      cell.epsilon = eps;
      for (const char* name : names)
        cell.histograms.push_back({name, -options.range, options.range,
                                   std::vector<long>(static_cast<std::size_t>(options.bins) + 2, 0)});
      WinRow vs_sgd{n, eps, "sgd", 0, 0}, vs_init{n, eps, "init", 0, 0};
      const std::uint64_t eps_bits = std::bit_cast<std::uint64_t>(eps);
      for (std::size_t t = 0; t < options.trials; ++t) {
        RngStream rows_rng(derive_seed(options.master_seed, {n, eps_bits, t}));
        std::vector<int> rows(n);
        for (auto& r : rows) r = static_cast<int>(rows_rng.index(static_cast<std::size_t>(population.rows())));
        for (int i = 0; i < d; ++i) {
          const GlmLogistic& model = population.model(i);
          std::vector<GlmSample> sample(n);
          for (std::size_t k = 0; k < n; ++k) sample[k] = {rows[k], population.label(i, rows[k])};
          const auto ti = static_cast<std::uint64_t>(i);
          RngStream sgd_rng(derive_seed(options.master_seed, {n, eps_bits, t, ti, 1}));
          RngStream os_rng(derive_seed(options.master_seed, {n, eps_bits, t, ti, 2}));
          Eigen::VectorXd sgd = private_sgd(model, sample, eps, sgd_rng, options.step_scale);
          std::vector<Eigen::VectorXd> vs;
          for (int j = 0; j < model.dim(); ++j) vs.push_back(Eigen::VectorXd::Unit(model.dim(), j));
          OneStepResult os = glm_onestep(model, sample, vs, eps, os_rng);
          MleResult mle = mle_logistic(model, sample);
          const Eigen::VectorXd& truth = population.theta_ml(i);
          for (int j = 0; j < model.dim(); ++j) {
            const double e_sgd = sgd(j) - truth(j);
            const double e_os = os.estimates[static_cast<std::size_t>(j)].phi_hat - truth(j);
            const double e_init = os.theta_pilot(j) - truth(j);
            const double e_mle = mle.theta(j) - truth(j);
            const double errs[] = {e_sgd, e_os, e_init, e_mle};
            for (int h = 0; h < 4; ++h) add_to(cell.histograms[static_cast<std::size_t>(h)], errs[h], options.bins);
            vs_sgd.wins += std::abs(e_os) < std::abs(e_sgd);
            vs_init.wins += std::abs(e_os) < std::abs(e_init);
            ++vs_sgd.total;
            ++vs_init.total;
          }
        }
      }
      result.cells.push_back(std::move(cell));
      result.win_table.push_back(vs_sgd);
      result.win_table.push_back(vs_init);
    }
  }
  result.runtime_ms = elapsed_ms(start);
  return result;
}

}  // namespace ldp
