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

#include "ldp/channels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "ldp/constants.hpp"
#include "ldp/divergences.hpp"

namespace ldp {

FiniteChannel::FiniteChannel(std::vector<Atom> inputs, std::vector<Atom> outputs, Eigen::MatrixXd kernel)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), kernel_(std::move(kernel)) {
  if (kernel_.rows() != static_cast<Eigen::Index>(inputs_.size()) ||
      kernel_.cols() != static_cast<Eigen::Index>(outputs_.size()))
    throw std::invalid_argument("FiniteChannel: kernel shape does not match inputs x outputs");
  if (inputs_.empty() || outputs_.empty()) throw std::invalid_argument("FiniteChannel: empty input or output space");
  for (Eigen::Index i = 0; i < kernel_.rows(); ++i) {
    for (Eigen::Index j = 0; j < kernel_.cols(); ++j)
      if (!std::isfinite(kernel_(i, j)) || kernel_(i, j) < 0)
        throw std::invalid_argument("FiniteChannel: negative or non-finite kernel entry");
    double s = kernel_.row(i).sum();
    if (std::fabs(s - 1.0) > constants::kNormalizationTol)
      throw std::invalid_argument("FiniteChannel: row " + std::to_string(i) + " sums to " + std::to_string(s));
    kernel_.row(i) /= s;
  }
  // Reuse the distribution checks for atom uniqueness.
  DiscreteDistribution::uniform(inputs_);
  DiscreteDistribution::uniform(outputs_);
}

FiniteChannel FiniteChannel::identity(const std::vector<Atom>& atoms) {
  const auto k = static_cast<Eigen::Index>(atoms.size());
  return FiniteChannel(atoms, atoms, Eigen::MatrixXd::Identity(k, k));
}

FiniteChannel FiniteChannel::constant(const std::vector<Atom>& inputs, const DiscreteDistribution& row) {
  Eigen::MatrixXd k = row.mass().transpose().replicate(static_cast<Eigen::Index>(inputs.size()), 1);
  return FiniteChannel(inputs, row.support(), k);
}

FiniteChannel product(const FiniteChannel& a, const FiniteChannel& b) {
  std::vector<Atom> in, out;
  for (const Atom& x : a.inputs())
    for (const Atom& y : b.inputs()) in.push_back("(" + x + "," + y + ")");
  for (const Atom& x : a.outputs())
    for (const Atom& y : b.outputs()) out.push_back("(" + x + "," + y + ")");
  Eigen::MatrixXd k = Eigen::kroneckerProduct(a.kernel(), b.kernel());
  return FiniteChannel(std::move(in), std::move(out), std::move(k));
}

ExtendedReal verify_ldp(const FiniteChannel& ch) {
  const Eigen::MatrixXd& k = ch.kernel();
  double worst = 0;
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    double hi = k.col(j).maxCoeff();
    double lo = k.col(j).minCoeff();
    if (hi <= 0) continue;
    if (lo <= 0) return ExtendedReal::infinity();
    worst = std::max(worst, std::log(hi) - std::log(lo));
  }
  return worst;
}

namespace {

template <typename F>
ExtendedReal max_pairwise(const FiniteChannel& ch, F&& f) {
  const Eigen::MatrixXd& k = ch.kernel();
  ExtendedReal worst = 0.0;
  for (Eigen::Index a = 0; a < k.rows(); ++a) {
    for (Eigen::Index b = 0; b < k.rows(); ++b) {
      if (a == b) continue;
      ExtendedReal d = f(k.row(a).transpose(), k.row(b).transpose());
      if (d.is_infinite()) return d;
      worst = max(worst, d);
    }
  }
  return worst;
}

}  // namespace

ExtendedReal verify_renyi(const FiniteChannel& ch, double alpha) {
  return max_pairwise(ch, [alpha](const Eigen::VectorXd& p, const Eigen::VectorXd& q) { return renyi(p, q, alpha); });
}

ExtendedReal verify_fk(const FiniteChannel& ch, double k) {
  ExtendedReal m =
      max_pairwise(ch, [k](const Eigen::VectorXd& p, const Eigen::VectorXd& q) { return fk_divergence(p, q, k); });
  if (m.is_infinite()) return m;
  return std::pow(m.value(), 1.0 / k);
}

ExtendedReal verify_chi2(const FiniteChannel& ch) {
  return max_pairwise(ch, [](const Eigen::VectorXd& p, const Eigen::VectorXd& q) { return chi_square(p, q); });
}

DiscreteDistribution push_forward(const DiscreteDistribution& p, const FiniteChannel& ch) {
  Eigen::VectorXd in = mass_on(p, ch.inputs());
  Eigen::VectorXd out = ch.kernel().transpose() * in;
  return DiscreteDistribution(ch.outputs(), out);
}

FiniteChannel rr_two_point_channel(double epsilon) {
  if (!(epsilon >= 0)) throw std::invalid_argument("rr_two_point_channel: epsilon must be non-negative");
  double keep = std::isinf(epsilon) ? 1.0 : 1.0 / (1.0 + std::exp(-epsilon));
  Eigen::Matrix2d k;
  k << keep, 1 - keep, 1 - keep, keep;
  return FiniteChannel({"0", "1"}, {"0", "1"}, k);
}

double RandomizedResponseBit::flip_probability() const {
  if (!(epsilon > 0)) throw std::invalid_argument("RandomizedResponseBit: epsilon must be positive");
  return std::isinf(epsilon) ? 0.0 : 1.0 / (std::exp(epsilon) + 1.0);
}

double RandomizedResponseBit::debiased_variance() const {
  if (std::isinf(epsilon)) return 0.0;
  double e = std::exp(epsilon);
  return e / ((e - 1) * (e - 1));
}

double rr_privatize(int bit, const RandomizedResponseBit& mech, RngStream& rng) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("rr_privatize: input must be 0 or 1");
  double q = mech.flip_probability();
  int b = rng.bernoulli(q) ? 1 - bit : bit;
  if (!mech.debiased) return b;
  if (q == 0.0) return b;
  double e = std::exp(mech.epsilon);
  return (e + 1) / (e - 1) * (b - q);
}

double LaplaceVectorMechanism::scale() const {
  if (!(epsilon > 0) || !(bound > 0) || dim < 1) throw std::invalid_argument("LaplaceVectorMechanism: bad parameters");
  if (std::isinf(epsilon)) return 0.0;
  return 2.0 * bound * dim / epsilon;
}

double LaplaceVectorMechanism::noise_variance() const {
  double b = scale();
  return 2 * b * b;
}

Eigen::VectorXd laplace_privatize(const Eigen::VectorXd& x, const LaplaceVectorMechanism& mech, RngStream& rng) {
  if (x.size() != mech.dim) throw std::invalid_argument("laplace_privatize: dimension mismatch");
  if (x.cwiseAbs().maxCoeff() > mech.bound * (1 + 1e-12))
    throw std::invalid_argument("laplace_privatize: input outside the l-infinity ball");
  double b = mech.scale();
  Eigen::VectorXd z = x;
  if (b == 0.0) return z;
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) += rng.laplace(b);
  return z;
}

double laplace_log_ratio(const Eigen::VectorXd& z, const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime,
                         double scale) {
  return ((z - x_prime).lpNorm<1>() - (z - x).lpNorm<1>()) / scale;
}

double laplace_max_log_ratio(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime, double scale) {
  return (x - x_prime).lpNorm<1>() / scale;
}

LaplaceAudit audit_laplace(const LaplaceVectorMechanism& mech, RngStream& rng, int random_pairs) {
  LaplaceAudit out;
  out.epsilon = mech.epsilon;
  const double b = mech.scale();
  const double r = mech.bound;
  const int d = mech.dim;
  bool ok = true;
  auto check = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& xp) {
    double sup = laplace_max_log_ratio(x, xp, b);
    out.worst_log_ratio = std::max(out.worst_log_ratio, sup);
    // A point between x and x' on the far side of x attains the supremum.
    Eigen::VectorXd z = x + (x - xp);
    Eigen::VectorXd probe(d);
    for (int i = 0; i < d; ++i) probe(i) = x(i) + rng.laplace(b);
    for (const Eigen::VectorXd* pz : {&z, &probe}) {
      double lr = laplace_log_ratio(*pz, x, xp, b);
      if (lr > sup * (1 + 1e-12) + 1e-12) ok = false;
    }
  };
  if (d <= 12) {
    for (long mask = 0; mask < (1L << d); ++mask) {
      Eigen::VectorXd x(d);
      for (int i = 0; i < d; ++i) x(i) = (mask >> i & 1) ? r : -r;
      check(x, -x);
    }
  } else {
    Eigen::VectorXd x = Eigen::VectorXd::Constant(d, r);
    check(x, -x);
  }
  for (int t = 0; t < random_pairs; ++t) {
    Eigen::VectorXd x(d), xp(d);
    for (int i = 0; i < d; ++i) {
      x(i) = r * (2 * rng.uniform() - 1);
      xp(i) = r * (2 * rng.uniform() - 1);
    }
    check(x, xp);
  }
  out.passed = ok && out.worst_log_ratio <= mech.epsilon * (1 + 1e-12);
  return out;
}

DiscreteDistribution random_distribution(int size, RngStream& rng, double zero_probability) {
  Eigen::VectorXd w(size);
  for (int i = 0; i < size; ++i) w(i) = rng.bernoulli(zero_probability) ? 0.0 : -std::log(1.0 - rng.uniform());
  if (w.sum() <= 0) w(static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(size)))) = 1.0;
  return DiscreteDistribution::from_masses(w / w.sum());
}

FiniteChannel random_channel(int n_inputs, int n_outputs, RngStream& rng, double zero_probability) {
  Eigen::MatrixXd k(n_inputs, n_outputs);
  for (int i = 0; i < n_inputs; ++i)
    k.row(i) = random_distribution(n_outputs, rng, zero_probability).mass().transpose();
  std::vector<Atom> in, out;
  for (int i = 0; i < n_inputs; ++i) in.push_back(std::to_string(i));
  for (int j = 0; j < n_outputs; ++j) out.push_back(std::to_string(j));
  return FiniteChannel(std::move(in), std::move(out), std::move(k));
}

}  // namespace ldp
