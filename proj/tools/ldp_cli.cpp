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

// Command-line front end. Every subcommand reads a JSON config and writes one
// CSV or JSON document. Exit codes: 0 pass, 2 failed verdict, 1 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ldp/bounds.hpp"
#include "ldp/channels.hpp"
#include "ldp/constants.hpp"
#include "ldp/contraction.hpp"
#include "ldp/estimators.hpp"
#include "ldp/expfam.hpp"
#include "ldp/harness.hpp"
#include "ldp/information.hpp"
#include "ldp/io.hpp"

namespace {

using ldp::io::Json;

constexpr int kPass = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t seed_of(const Common& c, const Json& cfg) {
  if (c.seed) return *c.seed;
  return cfg.value("seed", std::uint64_t{0});
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty())
    std::cout << text;
  else
    ldp::io::write_file(c.out, text);
}

double epsilon2_of(double eps) { return std::pow(std::expm1(eps), 2); }

// --- verify-channel ---------------------------------------------------------

int verify_channel(const Common& c, const Json& cfg) {
  const std::string mech = cfg.value("mechanism", std::string("channel"));
  Json out = Json::object();
  bool pass = true;
  if (mech == "laplace") {
    ldp::LaplaceVectorMechanism m{cfg.at("epsilon").get<double>(), cfg.value("bound", 1.0), cfg.value("dim", 1)};
    ldp::RngStream rng(seed_of(c, cfg));
    auto audit = ldp::audit_laplace(m, rng, cfg.value("random_pairs", 100));
    out = Json{{"mechanism", "laplace"},
               {"epsilon", ldp::io::number(audit.epsilon)},
               {"scale", ldp::io::number(m.scale())},
               {"worst_log_ratio", ldp::io::number(audit.worst_log_ratio)},
               {"pass", audit.passed}};
    pass = audit.passed;
  } else {
    std::optional<double> claimed;
    if (cfg.contains("claimed_epsilon")) claimed = cfg["claimed_epsilon"].get<double>();
    ldp::FiniteChannel ch = [&] {
      if (mech == "rr") {
        const double eps = cfg.at("epsilon").get<double>();
        if (!claimed) claimed = eps;
        return ldp::rr_two_point_channel(eps);
      }
      if (mech != "channel") throw UsageError("unknown mechanism '" + mech + "'");
      return ldp::io::channel_from_json(cfg.at("channel"));
    }();
    const ldp::ExtendedReal eps = ldp::verify_ldp(ch);
    out = Json{{"mechanism", mech},
               {"ldp_epsilon", ldp::io::to_json(eps)},
               {"chi2_epsilon2", ldp::io::to_json(ldp::verify_chi2(ch))}};
    if (cfg.contains("fk")) {
      Json fk = Json::object();
      for (double k : cfg["fk"].get<std::vector<double>>()) fk[ldp::io::format_number(k)] = ldp::io::to_json(ldp::verify_fk(ch, k));
      out["fk"] = fk;
    }
    if (claimed) {
      pass = eps.is_finite() && eps.value() <= *claimed + ldp::constants::kContractionSlack;
      out["claimed_epsilon"] = ldp::io::number(*claimed);
    }
    out["pass"] = pass;
  }
  if (c.format == "csv") {
    std::string csv = "metric,value\n";
    for (const auto& [k, v] : out.items()) {
      if (v.is_object()) {
        for (const auto& [kk, vv] : v.items()) csv += k + "_" + kk + "," + (vv.is_string() ? vv.get<std::string>() : vv.dump()) + "\n";
      } else {
        csv += k + "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
      }
    }
    emit(c, csv);
  } else {
    emit(c, ldp::io::dump(out));
  }
  return pass ? kPass : kFailed;
}

// --- contract-check ---------------------------------------------------------

int contract_check(const Common& c, const Json& cfg) {
  const auto ks = cfg.value("k", std::vector<double>{2.0});
  const std::uint64_t seed = seed_of(c, cfg);
  struct Row {
    std::size_t instance;
    double k;
    ldp::ContractionReport report;
  };
  std::vector<Row> rows;
  if (cfg.contains("random_instances")) {
    const int count = cfg["random_instances"].get<int>();
    const int max_size = cfg.value("max_size", 4);
    if (count < 0 || max_size < 2) throw UsageError("random_instances must be >= 0 and max_size >= 2");
    for (int i = 0; i < count; ++i) {
      const std::uint64_t s = ldp::derive_seed(seed, {static_cast<std::uint64_t>(i)});
      ldp::RngStream rng(s);
      const int nx = 2 + static_cast<int>(rng.index(static_cast<std::size_t>(max_size - 1)));
      const int nz = 2 + static_cast<int>(rng.index(static_cast<std::size_t>(max_size - 1)));
      auto ch = ldp::random_channel(nx, nz, rng);
      auto p0 = ldp::random_distribution(nx, rng, 0.2);
      auto p1 = ldp::random_distribution(nx, rng, 0.2);
      p0 = ldp::DiscreteDistribution(ch.inputs(), p0.mass());
      p1 = ldp::DiscreteDistribution(ch.inputs(), p1.mass());
      for (double k : ks) rows.push_back({static_cast<std::size_t>(i), k, ldp::check_fk_contraction(ch, p0, p1, k, s)});
    }
  } else {
    auto ch = ldp::io::channel_from_json(cfg.at("channel"));
    auto p0 = ldp::io::distribution_from_json(cfg.at("p0"));
    auto p1 = ldp::io::distribution_from_json(cfg.at("p1"));
    for (double k : ks) rows.push_back({0, k, ldp::check_fk_contraction(ch, p0, p1, k, seed)});
  }
  bool pass = true;
  for (const auto& r : rows) pass = pass && r.report.holds;
  if (c.format == "csv") {
    std::string csv = "instance,k,lhs,rhs,holds,epsilon_used,seed\n";
    for (const auto& r : rows) {
      const auto& rep = r.report;
      csv += std::to_string(r.instance) + "," + ldp::io::format_number(r.k) + "," + ldp::io::format_number(rep.lhs) +
             "," + ldp::io::format_number(rep.rhs.as_double()) + "," + (rep.holds ? "true" : "false") + "," +
             ldp::io::format_number(rep.epsilon_used.as_double()) + "," + std::to_string(rep.seed) + "\n";
    }
    emit(c, csv);
  } else {
    Json reports = Json::array();
    for (const auto& r : rows) {
      Json j = ldp::io::to_json(r.report);
      j["instance"] = r.instance;
      j["k"] = ldp::io::number(r.k);
      reports.push_back(j);
    }
    emit(c, ldp::io::dump(Json{{"reports", reports}, {"pass", pass}}));
  }
  return pass ? kPass : kFailed;
}

// --- bound ------------------------------------------------------------------

ldp::ScalarFn bernoulli_modulus(double p0, double step) {
  auto family = ldp::bernoulli_grid_family(step);
  const auto base = std::find_if(family.begin(), family.end(),
                                 [&](const ldp::Candidate& x) { return std::abs(x.parameter(0) - p0) < step / 2; });
  if (base == family.end()) throw UsageError("p0 is not on the Bernoulli grid");
  const ldp::Candidate center = *base;
  return [family, center](double delta) {
    return ldp::modulus_search(ldp::LossSpec::squared(), center, family, delta);
  };
}

ldp::io::BoundRow evaluate_bound(const Json& b) {
  const std::string name = b.at("name").get<std::string>();
  auto num = [&](const char* key) { return b.at(key).get<double>(); };
  if (name == "delta_eps") return {name, {{"epsilon", num("epsilon")}}, ldp::delta_eps(num("epsilon"))};
  if (name == "bernoulli_lower")
    return {name, {{"n", num("n")}, {"epsilon", num("epsilon")}}, ldp::bernoulli_lower(num("n"), epsilon2_of(num("epsilon")))};
  if (name == "logistic_pred_lower") {
    auto r = ldp::logistic_pred_lower(num("theta0"), num("n"), epsilon2_of(num("epsilon")));
    return {name, {{"theta0", num("theta0")}, {"n", num("n")}, {"epsilon", num("epsilon")}}, r.value};
  }
  if (name == "theorem1_bernoulli" || name == "achievable_bernoulli") {
    const double step = b.value("step", 0.01);
    auto omega = bernoulli_modulus(num("p0"), step);
    std::map<std::string, double> params{{"p0", num("p0")}, {"n", num("n")}, {"epsilon", num("epsilon")}, {"step", step}};
    if (name == "theorem1_bernoulli") return {name, params, ldp::theorem1_lower(omega, num("n"), epsilon2_of(num("epsilon"))).exact};
    const double gamma = b.value("gamma", 4.0), beta = b.value("beta", 1.0), alpha = b.value("alpha", 2.0);
    params.insert({{"gamma", gamma}, {"beta", beta}, {"alpha", alpha}});
    return {name, params, ldp::achievable_upper(omega, num("n"), num("epsilon"), gamma, beta, alpha)};
  }
  if (name == "one_param_info_bernoulli") {
    auto m = ldp::ScoreModel::bernoulli(num("p"));
    return {name, {{"p", num("p")}, {"n", num("n")}, {"epsilon", num("epsilon")}},
            ldp::one_param_info_bound(m, num("n"), epsilon2_of(num("epsilon")))};
  }
  if (name == "hypercube_c2") {
    const int d = b.at("d").get<int>();
    return {name, {{"d", d}, {"delta", num("delta")}}, ldp::complexity_c2(ldp::hypercube_packing(d, num("delta")))};
  }
  if (name == "sparse_logistic_c2") {
    const int d = b.at("d").get<int>();
    auto fam = ldp::sparse_logistic_packing(d, num("theta0"), num("delta"));
    return {name, {{"d", d}, {"theta0", num("theta0")}, {"delta", num("delta")}}, ldp::complexity_c2(fam)};
  }
  throw UsageError("unknown bound '" + name + "'");
}

int bound(const Common& c, const Json& cfg) {
  std::vector<ldp::io::BoundRow> rows;
  for (const auto& b : cfg.at("bounds")) rows.push_back(evaluate_bound(b));
  emit(c, c.format == "csv" ? ldp::io::bounds_csv(rows) : ldp::io::dump(ldp::io::bounds_json(rows)));
  return kPass;
}

// --- estimate ---------------------------------------------------------------

ldp::ExpFamily1D family_of(const std::string& name) {
  if (name == "gaussian_location") return ldp::ExpFamily1D::gaussian_location();
  if (name == "bernoulli") return ldp::ExpFamily1D::bernoulli();
  if (name == "rademacher") return ldp::ExpFamily1D::rademacher();
  throw UsageError("unknown family '" + name + "'");
}

int estimate(const Common& c, const Json& cfg) {
  const std::string kind = cfg.at("estimator").get<std::string>();
  const auto n = cfg.at("n").get<std::size_t>();
  const double eps = cfg.at("epsilon").get<double>();
  ldp::TrialPlan plan;
  plan.trials = cfg.value("trials", std::size_t{100});
  plan.master_seed = seed_of(c, cfg);
  plan.workers = cfg.value("workers", 1);
  plan.record_timing = cfg.value("record_timing", false);
  if (kind == "rr_bernoulli") {
    plan.estimators.push_back(ldp::rr_bernoulli_spec(cfg.at("p").get<double>(), n, eps));
  } else if (kind == "expfam_onestep") {
    plan.estimators.push_back(
        ldp::expfam_onestep_spec(family_of(cfg.value("family", std::string("gaussian_location"))), cfg.value("theta0", 0.0), n, eps));
  } else if (kind == "two_point") {
    auto p0 = ldp::io::distribution_from_json(cfg.at("p0"));
    auto p1 = ldp::io::distribution_from_json(cfg.at("p1"));
    plan.estimators.push_back(ldp::two_point_spec(p0, p1, cfg.value("truth", 0), n, eps));
  } else {
    throw UsageError("unknown estimator '" + kind + "'");
  }
  auto reports = ldp::run_trials(plan);

  bool pass = true;
  Json verdict;
  if (cfg.contains("target_variance")) {
    // For the one-step estimator n is the per-stage size.
    auto v = ldp::variance_check(reports, static_cast<double>(n), cfg["target_variance"].get<double>(), cfg.value("tolerance", 0.1));
    pass = v.pass;
    verdict = Json{{"empirical", ldp::io::number(v.empirical)},
                   {"target", ldp::io::number(v.target)},
                   {"rel_error", ldp::io::number(v.rel_error)},
                   {"pass", v.pass}};
    std::cerr << "variance " << ldp::io::format_number(v.empirical) << " target " << ldp::io::format_number(v.target)
              << (v.pass ? " pass" : " FAIL") << "\n";
  }
  if (c.format == "csv") {
    emit(c, ldp::io::reports_csv(reports));
  } else {
    Json out{{"reports", ldp::io::reports_json(reports)}, {"mse", ldp::io::number(ldp::mean_squared_error(reports))}};
    if (!verdict.is_null()) out["variance_check"] = verdict;
    emit(c, ldp::io::dump(out));
  }
  return pass ? kPass : kFailed;
}

// --- experiment -------------------------------------------------------------

int experiment(const Common& c, const Json& cfg, const std::string& hist_out) {
  const Json pcfg = cfg.value("population", Json::object());
  const std::uint64_t seed = seed_of(c, cfg);
  ldp::SyntheticPopulation pop(pcfg.value("seed", seed), pcfg.value("rows", 5000), pcfg.value("dim", 6),
                               pcfg.value("rho", 0.6));
  std::vector<std::size_t> ns;
  if (cfg.contains("n"))
    ns = cfg["n"].get<std::vector<std::size_t>>();
  else
    ns = {static_cast<std::size_t>(cfg.value("n_multiplier", 10)) * static_cast<std::size_t>(pop.rows())};
  ldp::ExperimentOptions opts;
  opts.trials = cfg.value("trials", std::size_t{50});
  opts.master_seed = seed;
  opts.bins = cfg.value("bins", 40);
  opts.range = cfg.value("range", 2.0);
  opts.step_scale = cfg.value("step_scale", 1.0 / 20.0);
  auto result = ldp::experiment_glm(pop, ns, cfg.value("epsilon", std::vector<double>{1.0, 4.0}), opts);

  bool pass = true;
  if (cfg.contains("min_win_rate")) {
    const double floor = cfg["min_win_rate"].get<double>();
    for (const auto& w : result.win_table)
      if (w.versus == "sgd" && w.frequency() <= floor) pass = false;
  }
  if (!hist_out.empty()) ldp::io::write_file(hist_out, ldp::io::histograms_csv(result));
  if (c.format == "csv") {
    emit(c, ldp::io::win_table_csv(result.win_table));
  } else {
    Json out = ldp::io::experiment_json(result);
    out["pass"] = pass;
    emit(c, ldp::io::dump(out));
  }
  return pass ? kPass : kFailed;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON config file")->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "master seed (overrides the config)");
  sub->add_option("--out", c.out, "output path (stdout when omitted)");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private estimation toolkit"};
  app.require_subcommand(1);
  Common common;
  std::string hist_out;
  auto* vc = app.add_subcommand("verify-channel", "privacy level of a channel or mechanism");
  auto* cc = app.add_subcommand("contract-check", "f_k contraction checks");
  auto* bd = app.add_subcommand("bound", "evaluate lower and upper bounds");
  auto* es = app.add_subcommand("estimate", "Monte Carlo trials of a private estimator");
  auto* ex = app.add_subcommand("experiment", "GLM comparison on a synthetic population");
  for (auto* sub : {vc, cc, bd, es, ex}) add_common(sub, common);
  ex->add_option("--hist-out", hist_out, "histogram CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const Json cfg = ldp::io::read_json_file(common.config);
    if (vc->parsed()) return verify_channel(common, cfg);
    if (cc->parsed()) return contract_check(common, cfg);
    if (bd->parsed()) return bound(common, cfg);
    if (es->parsed()) return estimate(common, cfg);
    return experiment(common, cfg, hist_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
