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

#include "ldp/information.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ldp/constants.hpp"

namespace ldp {

ScoreModel::ScoreModel(DiscreteDistribution base, Eigen::MatrixXd scores)
    : base_(std::move(base)), scores_(std::move(scores)) {
  if (scores_.rows() != static_cast<Eigen::Index>(base_.size()) || scores_.cols() < 1)
    throw std::invalid_argument("ScoreModel: score table must have one row per atom and d >= 1 columns");
  if (!scores_.allFinite()) throw std::invalid_argument("ScoreModel: non-finite score");
  Eigen::VectorXd mean = scores_.transpose() * base_.mass();
  if (mean.cwiseAbs().maxCoeff() > constants::kScoreMeanTol)
    throw std::invalid_argument("ScoreModel: score does not have mean zero");
}

ScoreModel ScoreModel::bernoulli(double p) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("ScoreModel::bernoulli: p must be in (0, 1)");
  Eigen::MatrixXd s(2, 1);
  s << -p / (p * (1 - p)), (1 - p) / (p * (1 - p));
  return ScoreModel(DiscreteDistribution::bernoulli(p), s);
}

Eigen::MatrixXd fisher_info(const ScoreModel& m) {
  const Eigen::MatrixXd& s = m.scores();
  return s.transpose() * m.base().mass().asDiagonal() * s;
}

double l1_info(const ScoreModel& m, const Eigen::VectorXd& h) {
  if (h.size() != m.dim()) throw std::invalid_argument("l1_info: dimension mismatch");
  return m.base().mass().dot((m.scores() * h).cwiseAbs());
}

namespace {

// Dual of h -> sum_i |b_i' h| over the rows b_i of `b` (weights folded in),
// assuming the rows span R^d.
double polyhedral_dual(const Eigen::MatrixXd& b, const Eigen::VectorXd& v) {
  const int d = static_cast<int>(b.cols());
  const int rows = static_cast<int>(b.rows());
  auto seminorm = [&](const Eigen::VectorXd& h) { return (b * h).cwiseAbs().sum(); };
  if (d == 1) return std::abs(v(0)) / b.col(0).cwiseAbs().sum();
  double best = 0;
  std::vector<int> idx(static_cast<std::size_t>(d - 1));
  for (int i = 0; i < d - 1; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    Eigen::MatrixXd sub(d - 1, d);
    for (int i = 0; i < d - 1; ++i) sub.row(i) = b.row(idx[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    lu.setThreshold(1e-12);
    if (lu.rank() == d - 1) {
      Eigen::VectorXd u = lu.kernel().col(0);
      double j = seminorm(u);
      if (j > 0) best = std::max(best, std::abs(v.dot(u)) / j);
    }
    int pos = d - 2;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == rows - (d - 1) + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < d - 1; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return best;
}

}  // namespace

ExtendedReal l1_dual_norm(const ScoreModel& m, const Eigen::VectorXd& v) {
  if (v.size() != m.dim()) throw std::invalid_argument("l1_dual_norm: dimension mismatch");
  if (m.base().size() > constants::kDualNormSupportCap)
    throw std::length_error("l1_dual_norm: support exceeds the vertex enumeration cap");
  if (v.isZero(0.0)) return 0.0;
  // Weighted score rows on the atoms with positive mass.
  std::vector<Eigen::Index> live;
  for (Eigen::Index i = 0; i < m.scores().rows(); ++i)
    if (m.base().mass()(i) > 0 && !m.scores().row(i).isZero(0.0)) live.push_back(i);
  if (live.empty()) return ExtendedReal::infinity();
  Eigen::MatrixXd b(static_cast<Eigen::Index>(live.size()), m.dim());
  for (std::size_t r = 0; r < live.size(); ++r)
    b.row(static_cast<Eigen::Index>(r)) = m.base().mass()(live[r]) * m.scores().row(live[r]);

  // Restrict to the row space of b; directions outside it cost nothing.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullV);
  const double tol = 1e-12 * std::max(1.0, svd.singularValues()(0));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  Eigen::MatrixXd basis = svd.matrixV().leftCols(rank);
  Eigen::VectorXd v_row = basis.transpose() * v;
  if ((v - basis * v_row).norm() > 1e-10 * std::max(1.0, v.norm())) return ExtendedReal::infinity();
  return polyhedral_dual(b * basis, v_row);
}

ExtendedReal generic_private_lb(const ScoreModel& m, const Eigen::VectorXd& grad_phi, double n, double epsilon2,
                                const std::function<double(double)>& phi) {
  if (!(n > 0) || !(epsilon2 > 0)) throw std::invalid_argument("generic_private_lb: n and epsilon2 must be positive");
  ExtendedReal dual = l1_dual_norm(m, grad_phi);
  double arg = dual.as_double() / (2 * std::sqrt(2 * n * epsilon2));
  return constants::kGenericPrivateLbPrefactor * phi(arg);
}

double one_param_info_bound(const ScoreModel& m, double n, double epsilon2) {
  if (m.dim() != 1) throw std::invalid_argument("one_param_info_bound: model must be one-dimensional");
  if (!(n > 0) || !(epsilon2 > 0)) throw std::invalid_argument("one_param_info_bound: n and epsilon2 must be positive");
  const double c = constants::kOneParamInformation;
  const double j = l1_info(m, Eigen::VectorXd::Ones(1));
  if (j == 0) return c;
  return std::min(c / (n * epsilon2 * j * j), c);
}

}  // namespace ldp
