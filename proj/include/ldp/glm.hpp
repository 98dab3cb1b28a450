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
#include <vector>

namespace ldp {

/// One observation: the covariate atom (row index into the feature table)
/// and the label y in {-1, +1}.
struct GlmSample {
  int x_index = 0;
  int y = 1;
};

/// Logistic GLM with a known discrete covariate law P_x:
/// p_theta(y | x) = exp(y theta'z - A(theta | x)), z = [x; 1] with the bias,
/// A(theta | x) = log(e^{theta'z} + e^{-theta'z}), T(x, y) = y z.
/// value/gradient/hessian are those of A_Px(theta) = E_Px A(theta | X),
/// computed exactly over the covariate atoms.
class GlmLogistic {
 public:
  /// `features` is K x p with entries in [-1, 1]; `px` holds K probabilities.
  GlmLogistic(const Eigen::MatrixXd& features, Eigen::VectorXd px, bool with_bias = true);

  int dim() const { return static_cast<int>(z_.cols()); }
  int atoms() const { return static_cast<int>(z_.rows()); }
  const Eigen::MatrixXd& design() const { return z_; }
  const Eigen::VectorXd& px() const { return px_; }
  /// l-infinity bound r on the sufficient statistic.
  double bound() const { return 1.0; }

  double value(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& theta) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& theta) const;

  Eigen::VectorXd statistic(const GlmSample& s) const { return s.y * z_.row(s.x_index).transpose(); }
  /// P_theta(y = +1 | x_index).
  double prob_positive(const Eigen::VectorXd& theta, int x_index) const;

 private:
  Eigen::MatrixXd z_;
  Eigen::VectorXd px_;
};

}  // namespace ldp
