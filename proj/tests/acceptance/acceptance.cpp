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

// Acceptance gate. One PASS/FAIL line per criterion; exit status 1 when any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "ldp/bounds.hpp"
#include "ldp/channels.hpp"
#include "ldp/contraction.hpp"
#include "ldp/divergences.hpp"
#include "ldp/estimators.hpp"
#include "ldp/expfam.hpp"
#include "ldp/glm.hpp"
#include "ldp/harness.hpp"
#include "ldp/io.hpp"
#include "ldp/rng.hpp"

namespace {

using namespace ldp;

constexpr double kSlack = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Eigen::VectorXd scalar(double x) { return Eigen::VectorXd::Constant(1, x); }

// 1. f_k contraction on random channels.
Outcome contraction_sweep() {
  RngStream rng(derive_seed(1001, {1}));
  double worst = std::numeric_limits<double>::infinity();
  int checks = 0;
  for (int i = 0; i < 200; ++i) {
    const int nx = 2 + static_cast<int>(rng.index(3));
    const int nz = 2 + static_cast<int>(rng.index(3));
    auto ch = random_channel(nx, nz, rng);
    auto p0 = DiscreteDistribution(ch.inputs(), random_distribution(nx, rng, 0.2).mass());
    auto p1 = DiscreteDistribution(ch.inputs(), random_distribution(nx, rng, 0.2).mass());
    for (double k : {1.5, 2.0, 3.0}) {
      auto rep = check_fk_contraction(ch, p0, p1, k);
      worst = std::min(worst, rep.slack());
      ++checks;
    }
  }
  return {worst >= -kSlack, std::to_string(checks) + " checks, min slack " + fmt("%.3g", worst)};
}

// 2. Tensorized chi-square and KL bounds by joint enumeration.
Outcome tensorization() {
  RngStream rng(derive_seed(1001, {2}));
  double worst = std::numeric_limits<double>::infinity();
  int count = 0;
  for (int m : {2, 3}) {
    for (int i = 0; i < 50; ++i) {
      std::vector<FiniteChannel> chans;
      std::vector<DiscreteDistribution> p0, p1;
      for (int j = 0; j < m; ++j) {
        chans.push_back(random_channel(2, 2, rng));
        p0.push_back(DiscreteDistribution(chans.back().inputs(), random_distribution(2, rng).mass()));
        p1.push_back(DiscreteDistribution(chans.back().inputs(), random_distribution(2, rng).mass()));
      }
      auto rep = check_tensorized_chi(chans, p0, p1);
      worst = std::min({worst, rep.chi.slack(), rep.kl.slack()});
      ++count;
    }
  }
  return {worst >= -kSlack, std::to_string(count) + " instances, min slack " + fmt("%.3g", worst)};
}

// 3. Order-2 complexity against closed-form bounds.
Outcome complexity() {
  bool pass = true;
  std::string detail;
  for (int d : {2, 3})
    for (double delta : {0.05, 0.1}) {
      const double c2 = complexity_c2(hypercube_packing(d, delta));
      pass = pass && c2 > 0 && c2 <= delta * delta / d + kSlack;
    }
  for (double t0 : {0.0, 1.0}) {
    auto fam = sparse_logistic_packing(2, t0, 0.5);
    // Outer infimum over the two reference laws used in the analysis.
    const double c2 = std::min(complexity_c2(fam), complexity_c2(fam, DiscreteDistribution::uniform(fam.base.support())));
    const double bound = sparse_logistic_complexity_bound(2, t0, 0.5);
    pass = pass && c2 <= bound + kSlack;
    detail += "sparse theta0=" + fmt("%g", t0) + ": " + fmt("%.6g", c2) + " <= " + fmt("%.6g", bound) + "; ";
  }
  return {pass, detail + "hypercube 4 cases"};
}

// 4. Randomized response MSE does not depend on p.
Outcome bernoulli_flatness() {
  const std::size_t n = 100000;
  const double eps = 1.0;
  double lo = std::numeric_limits<double>::infinity(), hi = 0, worst_rel = 0;
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    TrialPlan plan;
    plan.trials = 1000;
    plan.master_seed = derive_seed(1001, {4, static_cast<std::uint64_t>(std::lround(p * 10))});
    plan.estimators.push_back(rr_bernoulli_spec(p, n, eps));
    const double mse = mean_squared_error(run_trials(plan));
    const double target = rr_bernoulli_variance(p, eps, static_cast<double>(n));
    lo = std::min(lo, mse);
    hi = std::max(hi, mse);
    worst_rel = std::max(worst_rel, std::abs(mse / target - 1));
  }
  const double ratio = hi / lo;
  return {ratio <= 1.5 && worst_rel <= 0.10,
          "max/min MSE " + fmt("%.4f", ratio) + " (<= 1.5), worst rel. error " + fmt("%.4f", worst_rel) + " (<= 0.10)"};
}

// 5. Exponential-family one-step CLT.
Outcome expfam_clt() {
  const std::size_t n = 100000;
  const auto fam = ExpFamily1D::gaussian_location();
  const double target = expfam_onestep_variance(fam, 0.0, 1.0);
  TrialPlan plan;
  plan.trials = 2000;
  plan.master_seed = derive_seed(1001, {5});
  plan.estimators.push_back(expfam_onestep_spec(fam, 0.0, n, 1.0));
  auto v = variance_check(run_trials(plan), static_cast<double>(n), target, 0.15);
  return {v.pass && std::abs(target - 7.357) < 2e-3,
          "n Var " + fmt("%.4f", v.empirical) + " vs " + fmt("%.4f", target) + ", rel. error " + fmt("%.4f", v.rel_error) +
              " (<= 0.15)"};
}

// 6. GLM one-step variance at theta0 = 0.
Outcome glm_variance() {
  Eigen::MatrixXd x(4, 2);
  x << 1, 1, 1, -1, -1, 1, -1, -1;
  GlmLogistic model(x, Eigen::Vector4d::Constant(0.25));
  const Eigen::VectorXd theta0 = Eigen::VectorXd::Zero(model.dim());
  const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(model.dim(), 0);
  const std::size_t n = 50000;
  TrialPlan plan;
  plan.trials = 500;
  plan.master_seed = derive_seed(1001, {6});
  plan.estimators.push_back(glm_onestep_spec(model, theta0, e1, n, 1.0));
  auto v = variance_check(run_trials(plan), static_cast<double>(n), 3.0, 0.20);
  return {v.pass, "n Var " + fmt("%.4f", v.empirical) + " vs 3, rel. error " + fmt("%.4f", v.rel_error) + " (<= 0.20)"};
}

// 7. Private two-point test error rate.
Outcome two_point() {
  DiscreteDistribution p0({"a", "b"}, Eigen::Vector2d(0.75, 0.25));
  DiscreteDistribution p1({"a", "b"}, Eigen::Vector2d(0.25, 0.75));
  const double eps = std::log(3.0);
  const std::size_t trials = 2000;
  const double b = std::exp(-6.25);
  const double limit = b + 3 * std::sqrt(b * (1 - b) / static_cast<double>(trials));
  bool pass = std::abs(tv_distance(p0, p1) - 0.5) < 1e-12;
  std::string detail;
  for (int truth : {0, 1}) {
    TrialPlan plan;
    plan.trials = trials;
    plan.master_seed = derive_seed(1001, {7, static_cast<std::uint64_t>(truth)});
    plan.estimators.push_back(two_point_spec(p0, p1, truth, 800, eps));
    auto reports = run_trials(plan);
    const double errors = static_cast<double>(std::count_if(reports.begin(), reports.end(), [](const TrialReport& r) { return r.error != 0; }));
    const double rate = errors / static_cast<double>(trials);
    pass = pass && rate <= limit;
    detail += "truth " + std::to_string(truth) + ": " + fmt("%.4f", rate) + "; ";
  }
  return {pass, detail + "limit " + fmt("%.5f", limit)};
}

// 8. Bound consistency.
Outcome bounds_suite() {
  bool pass = true;
  std::string detail;
  const double step = 1e-4;
  const auto family = bernoulli_grid_family(step);
  std::vector<double> deltas;
  for (double d = 1e-3; d <= 0.2; d *= 1.2) deltas.push_back(d);
  int sandwich = 0;
  double worst_ratio = 0;
  for (double p0 : {0.1, 0.3, 0.5}) {
    const auto base = *std::find_if(family.begin(), family.end(),
                                    [&](const Candidate& c) { return std::abs(c.parameter(0) - p0) < step / 2; });
    auto omega = [&](double delta) { return modulus_search(LossSpec::squared(), base, family, delta); };
    auto curve = modulus_curve(LossSpec::squared(), base, family, deltas);
    pass = pass && curve.is_monotone();
    // Squared loss: reverse triangle constant 4, quadratic growth.
    const double beta = growth_beta(curve, 2.0);
    for (double n : {1e2, 1e4})
      for (double eps : {0.5, 1.0}) {
        const double lower = theorem1_lower(omega, n, std::pow(std::expm1(eps), 2)).exact;
        const double upper = achievable_upper(omega, n, eps, 4.0, beta, 2.0);
        pass = pass && lower > 0 && lower <= upper;
        worst_ratio = std::max(worst_ratio, lower / upper);
        ++sandwich;
      }
  }
  detail += std::to_string(sandwich) + " sandwiches, max lower/upper " + fmt("%.4g", worst_ratio);

  RngStream rng(derive_seed(1001, {8}));
  double tv_err = 0;
  for (int r = 0; r < 100; ++r) {
    const double t0 = 6 * rng.uniform() - 3, t1 = 6 * rng.uniform() - 3;
    double tv = 0;
    for (int x : {-1, 1})
      for (int y : {-1, 1}) tv += 0.25 * std::abs(1 / (1 + std::exp(-y * x * t0)) - 1 / (1 + std::exp(-y * x * t1)));
    tv_err = std::max(tv_err, std::abs(logistic_tv(t0, t1) - tv));
  }
  pass = pass && tv_err <= 1e-12;
  detail += "; logistic tv err " + fmt("%.2g", tv_err);

  // Mean modulus of the Rademacher family, parameterized naturally.
  auto base = DiscreteDistribution::uniform({"-1", "1"});
  std::vector<double> weights;
  for (int k = 1; k <= 400; ++k) weights.push_back(0.8 * k / 400.0);
  auto fam = mean_mixture_family(
      base, [](const Atom& a) { return scalar(std::stod(a)); }, {"-1", "1"}, weights,
      [](const Eigen::VectorXd& m) { return scalar(std::atanh(m(0))); });
  std::vector<double> grid;
  for (double d = 0.01; d <= 0.4; d *= 1.25) grid.push_back(d);
  auto curve = modulus_curve(LossSpec::phi_of_distance([](double t) { return t; }), Candidate{base, scalar(0)}, fam, grid);
  auto g = growth_check(curve);
  pass = pass && curve.is_monotone() && g.holds && g.alpha_hat == 1;
  detail += "; growth alpha " + std::to_string(g.alpha_hat) + " beta " + fmt("%.3f", g.beta_hat);
  return {pass, detail};
}

// 9. GLM experiment on the synthetic population.
Outcome experiment() {
  // 1000 rows keeps the run inside the budget on one core.
  SyntheticPopulation pop(derive_seed(1001, {9}), 1000, 6, 0.6);
  ExperimentOptions opts;
  opts.trials = 50;
  opts.master_seed = derive_seed(1001, {9, 1});
  const std::vector<std::size_t> ns{10 * static_cast<std::size_t>(pop.rows())};
  auto run = [&] { return experiment_glm(pop, ns, {1.0, 4.0}, opts); };
  auto first = run();
  double f1 = -1, f4 = -1;
  for (const auto& w : first.win_table) {
    if (w.versus != "sgd") continue;
    if (w.epsilon == 1.0) f1 = w.frequency();
    if (w.epsilon == 4.0) f4 = w.frequency();
  }
  auto second = run();
  const bool identical = io::win_table_csv(first.win_table) == io::win_table_csv(second.win_table) &&
                         io::histograms_csv(first) == io::histograms_csv(second);
  const bool pass = f4 > 0.5 && std::abs(f1 - 0.5) <= 0.15 && identical && first.runtime_ms < 600e3;
  return {pass, "win rate vs sgd eps=4 " + fmt("%.3f", f4) + " (> 0.5), eps=1 " + fmt("%.3f", f1) +
                    " (0.5 +- 0.15), rerun " + (identical ? "identical" : "DIFFERS") + ", one run " +
                    fmt("%.1f", first.runtime_ms / 1e3) + " s"};
}

// 10. Privacy audits.
Outcome privacy_audits() {
  double worst = 0;
  for (double eps : {0.1, 0.5, 1.0, std::log(3.0), 2.0, 4.0, 8.0})
    worst = std::max(worst, std::abs(verify_ldp(rr_two_point_channel(eps)).value() - eps));
  bool laplace = true;
  RngStream rng(derive_seed(1001, {10}));
  int audits = 0;
  for (double eps : {0.5, 1.0, 4.0})
    for (double bound : {0.5, 1.0})
      for (int dim : {1, 3, 7}) {
        laplace = laplace && audit_laplace(LaplaceVectorMechanism{eps, bound, dim}, rng).passed;
        ++audits;
      }
  return {worst <= 1e-9 && laplace, "RR max |eps_hat - eps| " + fmt("%.2g", worst) + ", " + std::to_string(audits) +
                                        " Laplace audits " + (laplace ? "passed" : "FAILED")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "contraction sweep", 10, contraction_sweep},
      {2, "tensorization", 30, tensorization},
      {3, "complexity oracle", 60, complexity},
      {4, "bernoulli flatness", 120, bernoulli_flatness},
      {5, "expfam one-step CLT", 300, expfam_clt},
      {6, "glm one-step variance", 300, glm_variance},
      {7, "two-point test", 60, two_point},
      {8, "bounds consistency", 60, bounds_suite},
      {9, "glm experiment", 1200, experiment},
      {10, "privacy audits", 60, privacy_audits},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs < c.budget_s;
    failed += !pass;
    std::printf("%s C%d %s: %s [%.1f s, budget %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
