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

#include "ldp/glm.hpp"

#include <cmath>
#include <stdexcept>

#include "ldp/constants.hpp"

namespace ldp {

GlmLogistic::GlmLogistic(const Eigen::MatrixXd& features, Eigen::VectorXd px, bool with_bias) : px_(std::move(px)) {
  if (features.rows() == 0 || features.rows() != px_.size())
    throw std::invalid_argument("GlmLogistic: need one probability per covariate atom");
  if (features.size() > 0 && features.cwiseAbs().maxCoeff() > 1 + 1e-12)
    throw std::invalid_argument("GlmLogistic: features must lie in [-1, 1]");
  if ((px_.array() < 0).any() || std::abs(px_.sum() - 1) > constants::kNormalizationTol)
    throw std::invalid_argument("GlmLogistic: covariate law is not a probability vector");
  px_ /= px_.sum();
  z_.resize(features.rows(), features.cols() + (with_bias ? 1 : 0));
  z_.leftCols(features.cols()) = features;
  if (with_bias) z_.col(features.cols()).setOnes();
  if (z_.cols() == 0) throw std::invalid_argument("GlmLogistic: empty design");
}

double GlmLogistic::value(const Eigen::VectorXd& theta) const {
  Eigen::ArrayXd s = (z_ * theta).array().abs();
  // log(e^s + e^-s) = |s| + log1p(e^{-2|s|})
  Eigen::ArrayXd a = s + (-2 * s).exp().log1p();
  return px_.dot(a.matrix());
}

Eigen::VectorXd GlmLogistic::gradient(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd t = (z_ * theta).array().tanh();
  return z_.transpose() * px_.cwiseProduct(t);
}

Eigen::MatrixXd GlmLogistic::hessian(const Eigen::VectorXd& theta) const {
  Eigen::ArrayXd t = (z_ * theta).array().tanh();
  Eigen::VectorXd w = px_.array() * (1 - t * t);
  return z_.transpose() * w.asDiagonal() * z_;
}

double GlmLogistic::prob_positive(const Eigen::VectorXd& theta, int x_index) const {
  const double s = z_.row(x_index).dot(theta);
  return 1.0 / (1.0 + std::exp(-2 * s));
}

}  // namespace ldp
