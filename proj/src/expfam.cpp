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

#include "ldp/expfam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldp {

ExpFamily1D ExpFamily1D::finite(std::vector<double> t_values, std::vector<double> weights) {
  if (t_values.size() < 2 || t_values.size() != weights.size())
    throw std::invalid_argument("ExpFamily1D::finite: need at least two values with matching weights");
  ExpFamily1D f;
  f.kind_ = Kind::kFinite;
  f.t_ = std::move(t_values);
  for (double w : weights) {
    if (!(w > 0)) throw std::invalid_argument("ExpFamily1D::finite: weights must be positive");
    f.log_w_.push_back(std::log(w));
  }
  if (*std::min_element(f.t_.begin(), f.t_.end()) == *std::max_element(f.t_.begin(), f.t_.end()))
    throw std::invalid_argument("ExpFamily1D::finite: T must not be constant");
  return f;
}

ExpFamily1D ExpFamily1D::gaussian_location() { return ExpFamily1D(); }

ExpFamily1D ExpFamily1D::bernoulli() { return finite({0.0, 1.0}, {1.0, 1.0}); }

ExpFamily1D ExpFamily1D::rademacher() { return finite({-1.0, 1.0}, {1.0, 1.0}); }

Eigen::VectorXd ExpFamily1D::tilted(double theta) const {
  const auto k = static_cast<Eigen::Index>(t_.size());
  Eigen::VectorXd z(k);
  for (Eigen::Index i = 0; i < k; ++i) z(i) = theta * t_[static_cast<std::size_t>(i)] + log_w_[static_cast<std::size_t>(i)];
  z = (z.array() - z.maxCoeff()).exp();
  return z / z.sum();
}

double ExpFamily1D::log_partition(double theta) const {
  if (kind_ == Kind::kGaussianLocation) return theta * theta / 2;
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t_.size(); ++i) m = std::max(m, theta * t_[i] + log_w_[i]);
  double s = 0;
  for (std::size_t i = 0; i < t_.size(); ++i) s += std::exp(theta * t_[i] + log_w_[i] - m);
  return m + std::log(s);
}

double ExpFamily1D::mean(double theta) const {
  if (kind_ == Kind::kGaussianLocation) return theta;
  Eigen::VectorXd p = tilted(theta);
  return p.dot(Eigen::Map<const Eigen::VectorXd>(t_.data(), p.size()));
}

double ExpFamily1D::variance(double theta) const {
  if (kind_ == Kind::kGaussianLocation) return 1.0;
  Eigen::VectorXd p = tilted(theta);
  Eigen::Map<const Eigen::VectorXd> t(t_.data(), p.size());
  const double m = p.dot(t);
  return p.dot((t.array() - m).square().matrix());
}

double ExpFamily1D::psi(double t, double theta) const {
  if (std::isinf(t)) return t < 0 ? 1.0 : 0.0;
  if (kind_ == Kind::kGaussianLocation) return 0.5 * std::erfc((t - theta) / std::sqrt(2.0));
  Eigen::VectorXd p = tilted(theta);
  double s = 0;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (t_[i] >= t) s += p(static_cast<Eigen::Index>(i));
  return std::min(1.0, s);
}

double ExpFamily1D::dpsi(double t, double theta) const {
  if (kind_ == Kind::kGaussianLocation) return std::exp(-(t - theta) * (t - theta) / 2) / std::sqrt(2 * M_PI);
  Eigen::VectorXd p = tilted(theta);
  const double m = mean(theta);
  double s = 0;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (t_[i] >= t) s += p(static_cast<Eigen::Index>(i)) * (t_[i] - m);
  return s;
}

double ExpFamily1D::l1_information(double theta) const {
  if (kind_ == Kind::kGaussianLocation) return std::sqrt(2 / M_PI);
  Eigen::VectorXd p = tilted(theta);
  const double m = mean(theta);
  double s = 0;
  for (std::size_t i = 0; i < t_.size(); ++i) s += p(static_cast<Eigen::Index>(i)) * std::abs(t_[i] - m);
  return s;
}

double ExpFamily1D::sample(double theta, RngStream& rng) const {
  if (kind_ == Kind::kGaussianLocation) return theta + rng.normal();
  Eigen::VectorXd p = tilted(theta);
  double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
    u -= p(static_cast<Eigen::Index>(i));
    if (u < 0) return t_[i];
  }
  return t_.back();
}

double ExpFamily1D::default_clip_bound() const {
  if (kind_ == Kind::kGaussianLocation) return 6.0;
  double b = 0;
  for (double t : t_) b = std::max(b, std::abs(t));
  return b;
}

HInverse invert_h(const ExpFamily1D& fam, double p, double t) {
  HInverse out;
  const double cap = constants::kBracketCap;
  if (std::isnan(p) || std::isnan(t)) throw std::invalid_argument("invert_h: NaN input");
  const double inf = std::numeric_limits<double>::infinity();
  // Limits of psi(t, .) as theta -> -inf and +inf.
  double floor_value = 0, ceiling_value = 1;
  if (fam.kind() == ExpFamily1D::Kind::kFinite) {
    const auto& tv = fam.t_values();
    if (t <= *std::min_element(tv.begin(), tv.end())) floor_value = 1;
    if (t > *std::max_element(tv.begin(), tv.end())) ceiling_value = 0;
  }
  if (p <= floor_value) {
    out.range = HInverse::Range::kBelow;
    out.theta = -inf;
    return out;
  }
  if (p >= ceiling_value) {
    out.range = HInverse::Range::kAbove;
    out.theta = inf;
    return out;
  }
  // Bracket [lo, hi] with psi(t, lo) < p <= psi(t, hi).
  double lo = -1, hi = 1;
  while (fam.psi(t, lo) >= p) {
    if (lo <= -cap) {
      out.range = HInverse::Range::kExceeded;
      out.theta = -cap;
      return out;
    }
    hi = lo;
    lo = std::max(2 * lo, -cap);
  }
  while (fam.psi(t, hi) < p) {
    if (hi >= cap) {
      out.range = HInverse::Range::kExceeded;
      out.theta = cap;
      return out;
    }
    lo = hi;
    hi = std::min(2 * hi, cap);
  }
  while (hi - lo > constants::kBisectionTol) {
    double mid = 0.5 * (lo + hi);
    if (fam.psi(t, mid) >= p)
      hi = mid;
    else
      lo = mid;
  }
  out.theta = 0.5 * (lo + hi);
  return out;
}

std::string to_string(HInverse::Range r) {
  switch (r) {
    case HInverse::Range::kInterior:
      return "interior";
    case HInverse::Range::kBelow:
      return "below";
    case HInverse::Range::kAbove:
      return "above";
    case HInverse::Range::kExceeded:
      return "exceeded";
  }
  return "unknown";
}

MultiExpFamily::MultiExpFamily(Eigen::MatrixXd points, Eigen::VectorXd weights) : points_(std::move(points)) {
  if (points_.rows() < 2 || weights.size() != points_.rows())
    throw std::invalid_argument("MultiExpFamily: need at least two points with matching weights");
  if ((weights.array() <= 0).any()) throw std::invalid_argument("MultiExpFamily: weights must be positive");
  log_weights_ = weights.array().log();
}

MultiExpFamily MultiExpFamily::rademacher() {
  Eigen::MatrixXd pts(2, 1);
  pts << -1, 1;
  return MultiExpFamily(pts, Eigen::Vector2d(1, 1));
}

Eigen::VectorXd MultiExpFamily::probabilities(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd z = points_ * theta + log_weights_;
  z = (z.array() - z.maxCoeff()).exp();
  return z / z.sum();
}

double MultiExpFamily::value(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd z = points_ * theta + log_weights_;
  const double m = z.maxCoeff();
  return m + std::log((z.array() - m).exp().sum());
}

Eigen::VectorXd MultiExpFamily::gradient(const Eigen::VectorXd& theta) const {
  return points_.transpose() * probabilities(theta);
}

Eigen::MatrixXd MultiExpFamily::hessian(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd p = probabilities(theta);
  Eigen::VectorXd m = points_.transpose() * p;
  Eigen::MatrixXd centered = points_.rowwise() - m.transpose();
  return centered.transpose() * p.asDiagonal() * centered;
}

}  // namespace ldp
