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

#include "ldp/distribution.hpp"
#include "ldp/extended_real.hpp"

namespace ldp {

/// Score function of a parametric family at a fixed parameter, tabulated on
/// the atoms of the base distribution: row i of `scores` is the score at
/// base.support()[i].
class ScoreModel {
 public:
  ScoreModel(DiscreteDistribution base, Eigen::MatrixXd scores);

  /// Bernoulli(p) score (x - p) / (p (1 - p)) on atoms "0", "1".
  static ScoreModel bernoulli(double p);

  const DiscreteDistribution& base() const { return base_; }
  const Eigen::MatrixXd& scores() const { return scores_; }
  int dim() const { return static_cast<int>(scores_.cols()); }

 private:
  DiscreteDistribution base_;
  Eigen::MatrixXd scores_;
};

/// E[s s'].
Eigen::MatrixXd fisher_info(const ScoreModel& m);

/// L1-information E|h's|, a seminorm in h.
double l1_info(const ScoreModel& m, const Eigen::VectorXd& h);

/// sup { v'h : l1_info(m, h) <= 1 }. Exact: the unit ball is a polytope and
/// the supremum is attained at a vertex, enumerated from (d-1)-subsets of
/// score vectors. +infinity when v has a component the seminorm cannot see.
/// Throws std::length_error for supports above 64 atoms.
ExtendedReal l1_dual_norm(const ScoreModel& m, const Eigen::VectorXd& v);

/// (1/(16 sqrt 2)) Phi(||grad_phi||_* / (2 sqrt(2 n eps^2))). Asymptotic:
/// the (1 - o(1)) factor is dropped.
ExtendedReal generic_private_lb(const ScoreModel& m, const Eigen::VectorXd& grad_phi, double n, double epsilon2,
                                const std::function<double(double)>& phi);

/// min{C / (n eps^2 (E|s|)^2), C} for one-parameter models, C = 1/512.
double one_param_info_bound(const ScoreModel& m, double n, double epsilon2);

}  // namespace ldp
