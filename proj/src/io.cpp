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

#include "ldp/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ldp::io {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

Json number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return std::strtod(format_number(x).c_str(), nullptr);
}

Json to_json(const ExtendedReal& x) { return x.is_infinite() ? Json("inf") : number(x.value()); }

ExtendedReal extended_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtendedReal::infinity();
    throw std::invalid_argument("expected a number or \"inf\"");
  }
  return j.get<double>();
}

namespace {

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

Json to_json(const DiscreteDistribution& p) {
  return Json{{"support", p.support()}, {"mass", vector_json(p.mass())}};
}

DiscreteDistribution distribution_from_json(const Json& j) {
  return DiscreteDistribution(j.at("support").get<std::vector<Atom>>(), j.at("mass").get<std::vector<double>>());
}

Json to_json(const FiniteChannel& ch) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < ch.kernel().rows(); ++i) rows.push_back(vector_json(ch.kernel().row(i).transpose()));
  return Json{{"inputs", ch.inputs()}, {"outputs", ch.outputs()}, {"kernel", rows}};
}

FiniteChannel channel_from_json(const Json& j) {
  auto inputs = j.at("inputs").get<std::vector<Atom>>();
  auto outputs = j.at("outputs").get<std::vector<Atom>>();
  const auto& rows = j.at("kernel");
  if (!rows.is_array() || rows.size() != inputs.size())
    throw std::invalid_argument("channel: kernel must have one row per input");
  Eigen::MatrixXd k(static_cast<Eigen::Index>(inputs.size()), static_cast<Eigen::Index>(outputs.size()));
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto row = rows[i].get<std::vector<double>>();
    if (row.size() != outputs.size()) throw std::invalid_argument("channel: kernel row has the wrong length");
    for (std::size_t z = 0; z < row.size(); ++z)
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(z)) = row[z];
  }
  return FiniteChannel(std::move(inputs), std::move(outputs), std::move(k));
}

Json to_json(const ContractionReport& r) {
  return Json{{"lhs", number(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"holds", r.holds},
              {"epsilon_used", to_json(r.epsilon_used)},
              {"seed", r.seed}};
}

std::string reports_csv(const std::vector<TrialReport>& reports) {
  std::ostringstream out;
  out << "trial_id,seed,estimator,target,estimate,error,runtime_ms\n";
  for (const auto& r : reports)
    out << r.trial_id << ',' << r.seed << ',' << r.estimator << ',' << format_number(r.target) << ','
        << format_number(r.estimate) << ',' << format_number(r.error) << ',' << format_number(r.runtime_ms) << '\n';
  return out.str();
}

Json reports_json(const std::vector<TrialReport>& reports) {
  Json a = Json::array();
  for (const auto& r : reports)
    a.push_back(Json{{"trial_id", r.trial_id},
                     {"seed", r.seed},
                     {"estimator", r.estimator},
                     {"target", number(r.target)},
                     {"estimate", number(r.estimate)},
                     {"error", number(r.error)},
                     {"runtime_ms", number(r.runtime_ms)}});
  return a;
}

std::string bounds_csv(const std::vector<BoundRow>& rows) {
  std::ostringstream out;
  out << "bound_name,params,value\n";
  for (const auto& r : rows) {
    out << r.name << ',';
    bool first = true;
    for (const auto& [k, v] : r.params) {
      out << (first ? "" : ";") << k << '=' << format_number(v);
      first = false;
    }
    out << ',' << (r.value.is_infinite() ? "inf" : format_number(r.value.value())) << '\n';
  }
  return out.str();
}

Json bounds_json(const std::vector<BoundRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = number(v);
    a.push_back(Json{{"bound_name", r.name}, {"params", params}, {"value", to_json(r.value)}});
  }
  return a;
}

std::string win_table_csv(const std::vector<WinRow>& rows) {
  std::ostringstream out;
  out << "n,epsilon,versus,wins,total,frequency\n";
  for (const auto& r : rows)
    out << r.n << ',' << format_number(r.epsilon) << ',' << r.versus << ',' << r.wins << ',' << r.total << ','
        << format_number(r.frequency()) << '\n';
  return out.str();
}

namespace {

// Edges of bin b, where bin 0 and bin bins+1 are open-ended.
std::pair<double, double> bin_edges(const Histogram& h, std::size_t b) {
  const auto bins = h.counts.size() - 2;
  const double w = (h.hi - h.lo) / static_cast<double>(bins);
  if (b == 0) return {-INFINITY, h.lo};
  if (b == bins + 1) return {h.hi, INFINITY};
  return {h.lo + w * static_cast<double>(b - 1), h.lo + w * static_cast<double>(b)};
}

}  // namespace

std::string histograms_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "n,epsilon,estimator,bin,lo,hi,count\n";
  for (const auto& cell : result.cells)
    for (const auto& h : cell.histograms)
      for (std::size_t b = 0; b < h.counts.size(); ++b) {
        auto [lo, hi] = bin_edges(h, b);
        out << cell.n << ',' << format_number(cell.epsilon) << ',' << h.estimator << ',' << b << ','
            << format_number(lo) << ',' << format_number(hi) << ',' << h.counts[b] << '\n';
      }
  return out.str();
}

Json experiment_json(const ExperimentResult& result) {
  Json cells = Json::array();
  for (const auto& cell : result.cells) {
    Json hists = Json::object();
    for (const auto& h : cell.histograms)
      hists[h.estimator] = Json{{"lo", number(h.lo)}, {"hi", number(h.hi)}, {"counts", h.counts}};
    cells.push_back(Json{{"n", cell.n}, {"epsilon", number(cell.epsilon)}, {"histograms", hists}});
  }
  Json wins = Json::array();
  for (const auto& r : result.win_table)
    wins.push_back(Json{{"n", r.n},
                        {"epsilon", number(r.epsilon)},
                        {"versus", r.versus},
                        {"wins", r.wins},
                        {"total", r.total},
                        {"frequency", number(r.frequency())}});
  return Json{{"cells", cells}, {"win_table", wins}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return Json::parse(f);
}

}  // namespace ldp::io
